// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "rsk/reduction.hpp"
#include "rsk/verify.hpp"
#include "test_util.hpp"

using namespace rsk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string report_detail(const SuiteReport& r) {
  std::ostringstream ss;
  ss << r.checked << " checks, " << r.matched << " matched, " << std::fixed
     << r.seconds << "s";
  if (!r.counterexamples.empty()) ss << "; first: " << r.counterexamples[0];
  return ss.str();
}

Outcome from_report(const SuiteReport& r, double budget_seconds) {
  Outcome o;
  o.pass = r.pass && r.seconds < budget_seconds;
  o.detail = report_detail(r);
  if (r.pass && r.seconds >= budget_seconds) o.detail += " (over budget)";
  return o;
}

// criterion 1: exhaustive value-s characterization in the rotation group
Outcome criterion1() {
  SuiteReport r = verify_prop3(9);
  Outcome o = from_report(r, 1.0);
  if (r.checked != 29523) {
    o.pass = false;
    o.detail += "; expected 29523 words";
  }
  if (r.matched != 5) {  // x^l s y^l for l = 0..4
    o.pass = false;
    o.detail += "; expected 5 value-s words";
  }
  return o;
}

// criterion 2: the cyclic-shift variants for n = 3 and n = 4
Outcome criterion2() {
  SuiteReport a = verify_prop3_shift(3, 7);
  SuiteReport b = verify_prop3_shift(4, 7);
  Outcome o;
  o.pass = a.pass && b.pass && a.seconds < 1.0 && b.seconds < 1.0 &&
           a.matched == 4 && b.matched == 4;
  o.detail = "n=3: " + report_detail(a) + " | n=4: " + report_detail(b);
  return o;
}

// criterion 3: path-word characterization in Z wr Z_3
Outcome criterion3() {
  SuiteReport r = verify_prop5(3, 5);
  Outcome o = from_report(r, 2.0);
  if (r.checked != 66430) {
    o.pass = false;
    o.detail += "; expected 66430 words";
  }
  if (r.matched != 1 + 3 + 9 + 27 + 81) {
    o.pass = false;
    o.detail += "; expected 121 path words";
  }
  return o;
}

// criterion 4: chain-word characterization over the signed permutations
Outcome criterion4() {
  SuiteReport r = verify_prop8(3);
  Outcome o = from_report(r, 10.0);
  if (r.checked != 266305) {
    o.pass = false;
    o.detail += "; expected 266305 words";
  }
  if (r.matched != 1 + 8 + 64 + 512) {
    o.pass = false;
    o.detail += "; expected 585 chain words";
  }
  return o;
}

// criterion 5: invariance, positive definiteness, strict Cauchy-Schwarz
Outcome criterion5() { return from_report(verify_gram(), 1.0); }

// criteria 6 and 7: end-to-end over seeded random automata
Outcome criterion6() { return from_report(verify_thm7_e2e(1, 50), 120.0); }
Outcome criterion7() { return from_report(verify_thm9_e2e(1, 50), 120.0); }

// criterion 8: the search oracle equals naive sequence enumeration
Outcome criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  GroupSpecPtr z2 = free_abelian(2);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<std::int64_t> entry(-2, 2);
  std::uint64_t elements = 0;
  for (int trial = 0; trial < 20 && o.pass; ++trial) {
    std::vector<Element> gens;
    int k = count(rng);
    for (int i = 0; i < k; ++i)
      gens.push_back(vector_element(z2, {entry(rng), entry(rng)}));
    SearchConfig cfg;
    cfg.max_len = 6;
    auto reach = reachable_set(z2, gens, cfg);
    auto naive = testutil::naive_products(z2, gens, 6);
    if (reach.size() != naive.size()) {
      o.pass = false;
      o.detail = "trial " + std::to_string(trial) + ": sizes differ";
      break;
    }
    for (const auto& [key, e] : reach) {
      auto it = naive.find(key);
      if (it == naive.end() || it->second.length != e.length ||
          it->second.letters != e.witness.letters ||
          !(evaluate_word(z2, gens, e.witness) == e.element)) {
        o.pass = false;
        o.detail = "trial " + std::to_string(trial) + ": entry mismatch";
        break;
      }
    }
    elements += reach.size();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (o.pass) {
    std::ostringstream ss;
    ss << "20 generator sets, " << elements << " elements agree, "
       << std::fixed << secs << "s";
    o.detail = ss.str();
  }
  o.pass = o.pass && secs < 30.0;
  return o;
}

// criterion 9: adding the forbidden padding letter (1, 1, y) to a tighter
// bundle admits a section element whose witness does not trace a path
Outcome criterion9() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  GroupSpecPtr z2 = free_abelian(2);
  FiniteMatrixGroup a = signed_permutation_group(2);
  TrivialStabVector v = find_trivial_stabilizer_vector(a);

  // probe the deterministic state injection to place two transitions whose
  // middle coordinates multiply to v + (-v) = 0 with top product c
  ReductionBundle probe = tighter_aut(Automaton(z2, 7, 0, {}, {}), a, v);
  const auto& images = probe.state_images;
  IntMatrix minus_id(2, {-1, 0, 0, -1});
  const IntMatrix& c = a.matrix(images[1]);
  IntMatrix minus_c = minus_id * c;
  std::size_t k = 0, m = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (a.matrix(images[i]) == minus_id) k = i;
    if (a.matrix(images[i]) == minus_c) m = i;
  }
  auto prenorm_of = [](std::size_t norm) { return norm == 0 ? 0 : norm - 1; };
  std::size_t pk = prenorm_of(k), pm = prenorm_of(m);
  std::size_t states = std::max<std::size_t>({pk, pm, 0}) + 1;

  std::vector<Transition> ts;
  ts.emplace_back(0, pk, vector_element(z2, {1, 0}));
  ts.emplace_back(0, pm, vector_element(z2, {0, 1}));
  Automaton fixture(z2, states, 0, {}, std::move(ts));

  ReductionBundle honest = tighter_aut(fixture, a, v);
  SearchConfig cfg;
  cfg.max_len = 9;
  cfg.max_elements = 4'000'000;
  if (!bundle_section(honest, cfg).empty()) {
    o.pass = false;
    o.detail = "honest bundle unexpectedly has section elements";
    return o;
  }

  ReductionBundle sabotaged = honest;
  const auto& factors = sabotaged.ambient->as<DirectProductSpec>()->factors;
  Element pad = product_element(
      sabotaged.ambient,
      {identity(factors[0]), identity(factors[1]),
       semidirect_element(factors[2], {0, 1}, 0)});  // (1, 1, y)
  sabotaged.generators.push_back(
      {std::move(pad), GenOrigin::VInvLetter, -1, -1, -1, 0});

  auto section = bundle_section(sabotaged, cfg);
  std::size_t bad = 0;
  for (const auto& [key, entry] : section) {
    try {
      witness_to_path(sabotaged, entry.witness);
    } catch (const InternalConsistencyError&) {
      ++bad;
    } catch (const MalformedWitnessError&) {
      ++bad;
    }
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::ostringstream ss;
  ss << section.size() << " spurious section elements, " << bad
     << " with untranslatable witnesses, " << std::fixed << secs << "s";
  o.detail = ss.str();
  o.pass = !section.empty() && bad > 0 && secs < 30.0;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"value-s characterization, rotation group, words up to length 9",
       criterion1},
      {"value-s characterization, cyclic shifts n=3 and n=4, length 7",
       criterion2},
      {"path-word characterization in Z wr Z_3, words up to length 5",
       criterion3},
      {"chain-word characterization over signed permutations, length 3",
       criterion4},
      {"invariant form: invariance, positive definite, strict Cauchy-Schwarz",
       criterion5},
      {"end-to-end sections via wreath marker bundles, 50 random automata",
       criterion6},
      {"end-to-end sections via lattice-by-finite bundles, 50 random automata",
       criterion7},
      {"search oracle completeness against naive enumeration", criterion8},
      {"negative control: the forbidden padding letter breaks witnesses",
       criterion9},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria pass\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
