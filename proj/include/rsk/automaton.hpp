#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rsk/group.hpp"
#include "rsk/oracle.hpp"

namespace rsk {

struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  Element label;
  // Label as a word over the declared generators (the JSON form); empty word
  // is the identity, nullopt means the label was built directly from an
  // element and a word will be synthesized on serialization.
  std::optional<std::vector<std::int32_t>> label_word;

  Transition(std::size_t f, std::size_t t, Element l,
             std::optional<std::vector<std::int32_t>> w = std::nullopt)
      : from(f), to(t), label(std::move(l)), label_word(std::move(w)) {}
};

// Finite graph with group-labelled edges. The labels of accepting paths
// define a subset of the base group. Immutable after construction.
class Automaton {
 public:
  Automaton(GroupSpecPtr base, std::size_t state_count, std::size_t initial,
            std::vector<std::size_t> accepting,
            std::vector<Transition> transitions,
            std::vector<Element> declared_generators = {});

  const GroupSpecPtr& base() const noexcept { return base_; }
  std::size_t state_count() const noexcept { return state_count_; }
  std::size_t initial() const noexcept { return initial_; }
  const std::vector<std::size_t>& accepting() const noexcept {
    return accepting_;
  }
  bool is_accepting(std::size_t s) const;
  const std::vector<Transition>& transitions() const noexcept {
    return transitions_;
  }
  const std::vector<Element>& declared_generators() const noexcept {
    return declared_generators_;
  }

 private:
  GroupSpecPtr base_;
  std::size_t state_count_;
  std::size_t initial_;
  std::vector<std::size_t> accepting_;  // sorted, unique
  std::vector<Transition> transitions_;
  std::vector<Element> declared_generators_;
};

struct PathWitness {
  std::vector<std::size_t> transitions;
  std::size_t size() const noexcept { return transitions.size(); }
  bool operator==(const PathWitness&) const = default;
};

// Consecutive transitions chain, starting at the initial state and ending at
// an accepting state. The empty path is valid iff the initial state accepts.
bool valid_path(const Automaton& aut, const PathWitness& p);
Element path_label(const Automaton& aut, const PathWitness& p);

// Adds one fresh state reached by identity-labelled edges from each old
// accepting state, then renames states so the initial state is 0 and the new
// unique accepting state is 1. Defines the same subset; each original
// accepting path gets exactly one edge longer. The fresh state is added even
// if the input already has a single accepting state.
Automaton normalize_single_accept(const Automaton& aut);

struct EnumerateConfig {
  std::size_t max_len = 4;
  std::size_t max_pairs = 1'000'000;  // (state, element) pair cap
};

struct PathLabel {
  Element label;
  std::size_t length;    // minimal accepting-path length
  PathWitness witness;   // lexicographically least among minimal
};

// Exactly the labels of accepting paths with at most max_len transitions,
// keyed and deduplicated by canonical_key.
std::map<std::string, PathLabel> enumerate_path_labels(
    const Automaton& aut, const EnumerateConfig& cfg);

// Bounded membership in the defined subset. A found witness is a positive
// word whose 1-based letters are transition indices. Never asserts
// non-membership.
SearchResult rat_member_bounded(const Automaton& aut, const Element& g,
                                std::size_t max_len,
                                std::size_t max_pairs = 1'000'000);

}  // namespace rsk
