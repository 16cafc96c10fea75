#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "rsk/errors.hpp"
#include "rsk/group.hpp"

namespace rsk {

struct SearchConfig {
  std::size_t max_len = 8;
  std::size_t max_elements = 1'000'000;  // distinct-element cap
  bool deterministic_witness = true;
};

enum class Verdict { Found, NotFoundWithinBound };

// Never a non-membership proof: NotFoundWithinBound only says the bound was
// fully explored without a hit.
struct SearchResult {
  Verdict verdict = Verdict::NotFoundWithinBound;
  std::optional<GeneratorWord> witness;
  std::size_t witness_length = 0;
  SearchStats stats;
  bool found() const noexcept { return verdict == Verdict::Found; }
};

struct ReachEntry {
  Element element;
  std::size_t length;     // minimal word length
  GeneratorWord witness;  // lexicographically least among minimal-length words
};

using ReachableMap = std::map<std::string, ReachEntry>;

// All products of at most cfg.max_len generators, breadth-first by length,
// keyed by canonical_key. `stages` (one entry per generator, when given)
// restricts the search to words whose stage sequence is non-decreasing; this
// realizes ordered products of submonoids.
ReachableMap reachable_set(const GroupSpecPtr& spec,
                           std::span<const Element> gens,
                           const SearchConfig& cfg,
                           std::span<const int> stages = {});

SearchResult submonoid_member_bounded(const GroupSpecPtr& spec,
                                      std::span<const Element> gens,
                                      const Element& target,
                                      const SearchConfig& cfg,
                                      std::span<const int> stages = {});

struct SectionEntry {
  Element g;  // leading-factor part
  std::size_t length;
  GeneratorWord witness;
};

// Leading parts of all reachable elements whose trailing coordinates equal
// those of h_target. spec must be a direct product; the first g_factors
// factors form the extracted part and the rest are matched against h_target
// (whose leading part is ignored).
std::map<std::string, SectionEntry> section_bounded(
    const GroupSpecPtr& spec, std::span<const Element> gens,
    std::size_t g_factors, const Element& h_target, const SearchConfig& cfg,
    std::span<const int> stages = {});

// Drops a search state when it returns false; exact for any query whose hits
// keep all their prefixes (the hook must be monotone: once false for an
// element it stays false at greater lengths).
using KeepHook = std::function<bool(const Element&, std::size_t length)>;

ReachableMap reachable_set_pruned(const GroupSpecPtr& spec,
                                  std::span<const Element> gens,
                                  const SearchConfig& cfg,
                                  std::span<const int> stages,
                                  const KeepHook& keep);

SearchResult submonoid_member_bounded_pruned(const GroupSpecPtr& spec,
                                             std::span<const Element> gens,
                                             const Element& target,
                                             const SearchConfig& cfg,
                                             std::span<const int> stages,
                                             const KeepHook& keep);

std::map<std::string, SectionEntry> section_bounded_pruned(
    const GroupSpecPtr& spec, std::span<const Element> gens,
    std::size_t g_factors, const Element& h_target, const SearchConfig& cfg,
    std::span<const int> stages, const KeepHook& keep);

}  // namespace rsk
