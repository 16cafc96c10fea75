#include "rsk/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

namespace rsk {

namespace {

struct Node {
  std::uint32_t element;  // index into elems
  std::uint32_t parent;   // index into nodes, self for the root
  std::int32_t via;       // generator index, -1 for the root
  std::uint8_t stage;
  std::uint32_t length;
};

struct Search {
  std::vector<Element> elems;
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::uint32_t> key_to_elem;
  std::vector<std::uint8_t> stage_mask;  // per element: stages already visited
  std::vector<char> pruned;              // per element: dropped by the hook
  std::vector<Node> nodes;
  std::vector<std::uint32_t> first_node;  // per element: node that created it
  SearchStats stats;
};

GeneratorWord backtrack(const Search& s, std::uint32_t node) {
  std::vector<std::int32_t> letters;
  for (std::uint32_t cur = node; s.nodes[cur].via >= 0;
       cur = s.nodes[cur].parent)
    letters.push_back(s.nodes[cur].via + 1);
  std::reverse(letters.begin(), letters.end());
  return GeneratorWord(std::move(letters), true);
}

// Breadth-first closure of words over `gens` respecting stage monotonicity.
// Expanding nodes in queue order with generators in index order visits words
// of equal length in lexicographic order, so the first node that produces an
// element carries the lexicographically least minimal witness. Returns the
// node index that matched stop_key, if any.
std::optional<std::uint32_t> run_bfs(Search& s, const GroupSpecPtr& spec,
                                     std::span<const Element> gens,
                                     std::span<const int> stages,
                                     const SearchConfig& cfg,
                                     const std::string* stop_key,
                                     const KeepHook* keep = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  auto finalize = [&] {
    s.stats.elements_visited = s.elems.size();
    s.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  };

  if (!stages.empty() && stages.size() != gens.size())
    throw InvalidParameterError("stage list does not match generator list");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].spec()->fingerprint() != spec->fingerprint())
      throw SpecMismatchError("generator belongs to a different group");
    if (!stages.empty() && (stages[i] < 0 || stages[i] > 7))
      throw InvalidParameterError("generator stage out of range");
  }
  if (cfg.max_elements < 1)
    throw InvalidParameterError("max_elements must be at least 1");

  // Returns the element id, inserting if new; second = inserted.
  auto intern = [&](Element e, std::string key) -> std::pair<std::uint32_t, bool> {
    auto it = s.key_to_elem.find(key);
    if (it != s.key_to_elem.end()) return {it->second, false};
    if (s.elems.size() >= cfg.max_elements) {
      finalize();
      throw ResourceLimitError(
          "search exceeded the element cap of " +
              std::to_string(cfg.max_elements) + " distinct elements",
          s.stats);
    }
    std::uint32_t id = static_cast<std::uint32_t>(s.elems.size());
    s.elems.push_back(std::move(e));
    s.keys.push_back(key);
    s.stage_mask.push_back(0);
    s.pruned.push_back(0);
    s.first_node.push_back(0);
    s.key_to_elem.emplace(std::move(key), id);
    return {id, true};
  };

  Element id_elem = identity(spec);
  std::string id_key = canonical_key(id_elem);
  bool stop_is_identity = stop_key && *stop_key == id_key;
  auto [root_elem, inserted] = intern(std::move(id_elem), std::move(id_key));
  (void)inserted;
  s.nodes.push_back(Node{root_elem, 0, -1, 0, 0});
  s.first_node[root_elem] = 0;
  s.stage_mask[root_elem] = 1;
  if (stop_is_identity) {
    finalize();
    return 0;
  }

  std::size_t head = 0;
  while (head < s.nodes.size()) {
    Node cur = s.nodes[head];
    std::uint32_t cur_node = static_cast<std::uint32_t>(head);
    ++head;
    if (cur.length >= cfg.max_len) continue;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      std::uint8_t gstage =
          stages.empty() ? 0 : static_cast<std::uint8_t>(stages[gi]);
      if (gstage < cur.stage) continue;
      Element next = multiply(s.elems[cur.element], gens[gi]);
      std::string key = canonical_key(next);
      auto [eid, fresh] = intern(std::move(next), std::move(key));
      // skip if this element was already reached at a stage that permits at
      // least the same continuations
      std::uint8_t mask = s.stage_mask[eid];
      bool dominated = (mask & ((2u << gstage) - 1)) != 0;
      if (!fresh && dominated) continue;
      if (fresh && keep && !(*keep)(s.elems[eid], cur.length + 1)) {
        // infeasible now and, by monotonicity, at any greater length
        s.pruned[eid] = 1;
        s.stage_mask[eid] = 0xff;
        continue;
      }
      if (s.pruned[eid]) continue;
      s.stage_mask[eid] = mask | static_cast<std::uint8_t>(1u << gstage);
      s.nodes.push_back(Node{eid, cur_node, static_cast<std::int32_t>(gi),
                             gstage, cur.length + 1});
      if (fresh) {
        s.first_node[eid] = static_cast<std::uint32_t>(s.nodes.size() - 1);
        if (stop_key && s.keys[eid] == *stop_key) {
          s.stats.max_frontier =
              std::max<std::uint64_t>(s.stats.max_frontier,
                                      s.nodes.size() - head);
          finalize();
          return static_cast<std::uint32_t>(s.nodes.size() - 1);
        }
      }
    }
    s.stats.max_frontier =
        std::max<std::uint64_t>(s.stats.max_frontier, s.nodes.size() - head);
  }
  finalize();
  return std::nullopt;
}

}  // namespace

namespace {

ReachableMap collect(const Search& s) {
  ReachableMap out;
  for (std::size_t i = 0; i < s.elems.size(); ++i) {
    if (s.pruned[i]) continue;
    std::uint32_t node = s.first_node[i];
    out.emplace(s.keys[i], ReachEntry{s.elems[i], s.nodes[node].length,
                                      backtrack(s, node)});
  }
  return out;
}

}  // namespace

ReachableMap reachable_set(const GroupSpecPtr& spec,
                           std::span<const Element> gens,
                           const SearchConfig& cfg,
                           std::span<const int> stages) {
  Search s;
  run_bfs(s, spec, gens, stages, cfg, nullptr);
  return collect(s);
}

ReachableMap reachable_set_pruned(const GroupSpecPtr& spec,
                                  std::span<const Element> gens,
                                  const SearchConfig& cfg,
                                  std::span<const int> stages,
                                  const KeepHook& keep) {
  Search s;
  run_bfs(s, spec, gens, stages, cfg, nullptr, &keep);
  return collect(s);
}

namespace {

SearchResult member_impl(const GroupSpecPtr& spec,
                         std::span<const Element> gens, const Element& target,
                         const SearchConfig& cfg, std::span<const int> stages,
                         const KeepHook* keep) {
  if (target.spec()->fingerprint() != spec->fingerprint())
    throw SpecMismatchError("target belongs to a different group");
  std::string key = canonical_key(target);
  Search s;
  std::optional<std::uint32_t> hit =
      run_bfs(s, spec, gens, stages, cfg, &key, keep);
  SearchResult r;
  r.stats = s.stats;
  if (hit) {
    r.verdict = Verdict::Found;
    r.witness = backtrack(s, *hit);
    r.witness_length = r.witness->size();
  }
  return r;
}

}  // namespace

SearchResult submonoid_member_bounded(const GroupSpecPtr& spec,
                                      std::span<const Element> gens,
                                      const Element& target,
                                      const SearchConfig& cfg,
                                      std::span<const int> stages) {
  return member_impl(spec, gens, target, cfg, stages, nullptr);
}

SearchResult submonoid_member_bounded_pruned(const GroupSpecPtr& spec,
                                             std::span<const Element> gens,
                                             const Element& target,
                                             const SearchConfig& cfg,
                                             std::span<const int> stages,
                                             const KeepHook& keep) {
  return member_impl(spec, gens, target, cfg, stages, &keep);
}

namespace {

std::map<std::string, SectionEntry> section_impl(
    const GroupSpecPtr& spec, std::span<const Element> gens,
    std::size_t g_factors, const Element& h_target, const SearchConfig& cfg,
    std::span<const int> stages, const KeepHook* keep) {
  const auto* dp = spec->as<DirectProductSpec>();
  if (!dp)
    throw InvalidParameterError("section extraction needs a direct product");
  if (g_factors < 1 || g_factors >= dp->factors.size())
    throw InvalidParameterError("coordinate selector out of range");
  if (h_target.spec()->fingerprint() != spec->fingerprint())
    throw SpecMismatchError("section target belongs to a different group");

  const auto& h_parts = h_target.as<std::vector<Element>>();
  std::string want;
  for (std::size_t i = g_factors; i < h_parts.size(); ++i)
    want += canonical_key(h_parts[i]);

  GroupSpecPtr g_spec =
      g_factors == 1
          ? dp->factors[0]
          : direct_product(std::vector<GroupSpecPtr>(
                dp->factors.begin(), dp->factors.begin() + g_factors));

  Search search;
  run_bfs(search, spec, gens, stages, cfg, nullptr, keep);
  ReachableMap reach = collect(search);
  std::map<std::string, SectionEntry> out;
  for (const auto& [key, entry] : reach) {
    const auto& parts = entry.element.as<std::vector<Element>>();
    std::string have;
    for (std::size_t i = g_factors; i < parts.size(); ++i)
      have += canonical_key(parts[i]);
    if (have != want) continue;
    Element g = g_factors == 1
                    ? parts[0]
                    : product_element(g_spec, std::vector<Element>(
                                                  parts.begin(),
                                                  parts.begin() + g_factors));
    std::string g_key = canonical_key(g);
    out.emplace(std::move(g_key),
                SectionEntry{std::move(g), entry.length, entry.witness});
  }
  return out;
}

}  // namespace

std::map<std::string, SectionEntry> section_bounded(
    const GroupSpecPtr& spec, std::span<const Element> gens,
    std::size_t g_factors, const Element& h_target, const SearchConfig& cfg,
    std::span<const int> stages) {
  return section_impl(spec, gens, g_factors, h_target, cfg, stages, nullptr);
}

std::map<std::string, SectionEntry> section_bounded_pruned(
    const GroupSpecPtr& spec, std::span<const Element> gens,
    std::size_t g_factors, const Element& h_target, const SearchConfig& cfg,
    std::span<const int> stages, const KeepHook& keep) {
  return section_impl(spec, gens, g_factors, h_target, cfg, stages, &keep);
}

}  // namespace rsk
