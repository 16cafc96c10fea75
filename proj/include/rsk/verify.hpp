#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rsk/automaton.hpp"
#include "rsk/reduction.hpp"

namespace rsk {

struct SuiteReport {
  std::string suite;
  bool pass = true;
  std::uint64_t checked = 0;
  std::uint64_t matched = 0;  // words / elements on the positive side
  std::vector<std::string> counterexamples;
  std::vector<std::string> notes;
  double seconds = 0.0;

  void fail(std::string what);
};

// Exhaustive sweep over positive words on {x, s, y} up to max_len: the value
// is s exactly when check_xsy_shape accepts.
SuiteReport verify_prop3(std::size_t max_len = 9);
SuiteReport verify_prop3_shift(std::size_t n, std::size_t max_len = 7);

// Exhaustive sweep over edge letters of Z wr Z_n up to max_len: the value is
// e_0^l s exactly when the letters chain 0 -> 1, and then l is the length.
SuiteReport verify_prop5(std::size_t n = 3, std::size_t max_len = 5);

// Exhaustive sweep over the chain letters of Z^2 ⋊ (signed permutations):
// the value is v^l a exactly when the letters chain from the identity.
SuiteReport verify_prop8(std::size_t max_len = 3);

// Invariance, positive definiteness and strict Cauchy-Schwarz of the averaged
// form, over a fixed family of finite matrix groups.
SuiteReport verify_gram();

// Random-automata end-to-end checks: every enumerated label appears in the
// bundle at witness length exactly 2l + 1, and every section element at
// length <= 9 translates back to a valid accepting path with that label.
SuiteReport verify_thm7_e2e(std::uint64_t seed = 1, std::size_t count = 50);
SuiteReport verify_thm9_e2e(std::uint64_t seed = 1, std::size_t count = 50);

// Seeded random automaton over Z^2 with labels in {-2..2}^2; exact duplicate
// transitions are skipped.
Automaton random_automaton(std::mt19937_64& rng, std::size_t max_states,
                           std::size_t max_transitions);

}  // namespace rsk
