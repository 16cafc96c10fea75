#include "rsk/automaton.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

namespace rsk {

Automaton::Automaton(GroupSpecPtr base, std::size_t state_count,
                     std::size_t initial, std::vector<std::size_t> accepting,
                     std::vector<Transition> transitions,
                     std::vector<Element> declared_generators)
    : base_(std::move(base)),
      state_count_(state_count),
      initial_(initial),
      accepting_(std::move(accepting)),
      transitions_(std::move(transitions)),
      declared_generators_(std::move(declared_generators)) {
  if (!base_) throw InvalidParameterError("automaton base group is null");
  if (state_count_ == 0)
    throw InvalidParameterError("automaton needs at least one state");
  if (initial_ >= state_count_)
    throw InvalidParameterError("initial state out of range");
  std::sort(accepting_.begin(), accepting_.end());
  accepting_.erase(std::unique(accepting_.begin(), accepting_.end()),
                   accepting_.end());
  for (std::size_t s : accepting_)
    if (s >= state_count_)
      throw InvalidParameterError("accepting state out of range");
  for (const Transition& t : transitions_) {
    if (t.from >= state_count_ || t.to >= state_count_)
      throw InvalidParameterError("transition endpoint out of range");
    if (t.label.spec()->fingerprint() != base_->fingerprint())
      throw SpecMismatchError("transition label belongs to a different group");
  }
  for (const Element& g : declared_generators_)
    if (g.spec()->fingerprint() != base_->fingerprint())
      throw SpecMismatchError("declared generator belongs to a different group");
}

bool Automaton::is_accepting(std::size_t s) const {
  return std::binary_search(accepting_.begin(), accepting_.end(), s);
}

bool valid_path(const Automaton& aut, const PathWitness& p) {
  std::size_t at = aut.initial();
  for (std::size_t i : p.transitions) {
    if (i >= aut.transitions().size()) return false;
    const Transition& t = aut.transitions()[i];
    if (t.from != at) return false;
    at = t.to;
  }
  return aut.is_accepting(at);
}

Element path_label(const Automaton& aut, const PathWitness& p) {
  Element acc = identity(aut.base());
  for (std::size_t i : p.transitions)
    acc = multiply(acc, aut.transitions().at(i).label);
  return acc;
}

Automaton normalize_single_accept(const Automaton& aut) {
  std::size_t n = aut.state_count();
  std::size_t fresh = n;  // pre-renaming index of the new accepting state
  // rename: initial -> 0, fresh -> 1, remaining old states in index order
  std::vector<std::size_t> rename(n + 1, 0);
  rename[aut.initial()] = 0;
  rename[fresh] = 1;
  std::size_t next = 2;
  for (std::size_t s = 0; s < n; ++s)
    if (s != aut.initial()) rename[s] = next++;

  std::vector<Transition> ts;
  ts.reserve(aut.transitions().size() + aut.accepting().size());
  for (const Transition& t : aut.transitions()) {
    Transition nt(rename[t.from], rename[t.to], t.label, t.label_word);
    ts.push_back(std::move(nt));
  }
  Element id = identity(aut.base());
  for (std::size_t a : aut.accepting())
    ts.emplace_back(rename[a], 1, id, std::vector<std::int32_t>{});

  return Automaton(aut.base(), n + 1, 0, {1}, std::move(ts),
                   aut.declared_generators());
}

namespace {

struct PathNode {
  std::uint32_t state;
  std::uint32_t elem;
  std::uint32_t parent;
  std::int32_t via;  // transition index, -1 for the root
  std::uint32_t length;
};

struct PathSearch {
  std::vector<Element> elems;
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::uint32_t> key_to_elem;
  // per element: set of states it has been seen at
  std::vector<std::vector<std::uint32_t>> seen_states;
  std::vector<PathNode> nodes;
  std::uint64_t pairs = 0;
  SearchStats stats;
};

PathWitness backtrack_path(const PathSearch& s, std::uint32_t node) {
  std::vector<std::size_t> ts;
  for (std::uint32_t cur = node; s.nodes[cur].via >= 0;
       cur = s.nodes[cur].parent)
    ts.push_back(static_cast<std::size_t>(s.nodes[cur].via));
  std::reverse(ts.begin(), ts.end());
  return PathWitness{std::move(ts)};
}

// BFS over (state, element) pairs; expansion in transition-index order makes
// the first visit of a pair the lexicographically least minimal path.
// `stop_key`, when set, ends the search once an accepting state carries that
// label; otherwise all accepting labels are collected into `out`.
std::optional<std::uint32_t> run_path_bfs(
    PathSearch& s, const Automaton& aut, std::size_t max_len,
    std::size_t max_pairs, const std::string* stop_key,
    std::map<std::string, PathLabel>* out) {
  auto t0 = std::chrono::steady_clock::now();
  auto finalize = [&] {
    s.stats.elements_visited = s.pairs;
    s.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  };

  // transitions grouped by source state, preserving index order
  std::vector<std::vector<std::uint32_t>> by_state(aut.state_count());
  for (std::size_t i = 0; i < aut.transitions().size(); ++i)
    by_state[aut.transitions()[i].from].push_back(
        static_cast<std::uint32_t>(i));

  auto intern = [&](Element e, std::string key) -> std::uint32_t {
    auto it = s.key_to_elem.find(key);
    if (it != s.key_to_elem.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(s.elems.size());
    s.elems.push_back(std::move(e));
    s.keys.push_back(key);
    s.seen_states.emplace_back();
    s.key_to_elem.emplace(std::move(key), id);
    return id;
  };

  auto mark_pair = [&](std::uint32_t elem, std::uint32_t state) -> bool {
    auto& states = s.seen_states[elem];
    if (std::find(states.begin(), states.end(), state) != states.end())
      return false;
    if (s.pairs >= max_pairs) {
      finalize();
      throw ResourceLimitError(
          "path enumeration exceeded the frontier cap of " +
              std::to_string(max_pairs) + " (state, element) pairs",
          s.stats);
    }
    states.push_back(state);
    ++s.pairs;
    return true;
  };

  // record an accepting hit; returns the node when it matches stop_key
  auto record = [&](std::uint32_t node) -> bool {
    const PathNode& nd = s.nodes[node];
    if (!aut.is_accepting(nd.state)) return false;
    const std::string& key = s.keys[nd.elem];
    if (out && !out->count(key))
      out->emplace(key, PathLabel{s.elems[nd.elem], nd.length,
                                  backtrack_path(s, node)});
    return stop_key && key == *stop_key;
  };

  Element id = identity(aut.base());
  std::uint32_t root_elem = intern(id, canonical_key(id));
  mark_pair(root_elem, static_cast<std::uint32_t>(aut.initial()));
  s.nodes.push_back(
      PathNode{static_cast<std::uint32_t>(aut.initial()), root_elem, 0, -1, 0});
  if (record(0)) {
    finalize();
    return 0;
  }

  std::size_t head = 0;
  while (head < s.nodes.size()) {
    PathNode cur = s.nodes[head];
    std::uint32_t cur_node = static_cast<std::uint32_t>(head);
    ++head;
    if (cur.length >= max_len) continue;
    for (std::uint32_t ti : by_state[cur.state]) {
      const Transition& t = aut.transitions()[ti];
      Element next = multiply(s.elems[cur.elem], t.label);
      std::string key = canonical_key(next);
      std::uint32_t eid = intern(std::move(next), std::move(key));
      if (!mark_pair(eid, static_cast<std::uint32_t>(t.to))) continue;
      s.nodes.push_back(PathNode{static_cast<std::uint32_t>(t.to), eid,
                                 cur_node, static_cast<std::int32_t>(ti),
                                 cur.length + 1});
      if (record(static_cast<std::uint32_t>(s.nodes.size() - 1))) {
        s.stats.max_frontier = std::max<std::uint64_t>(s.stats.max_frontier,
                                                       s.nodes.size() - head);
        finalize();
        return static_cast<std::uint32_t>(s.nodes.size() - 1);
      }
    }
    s.stats.max_frontier =
        std::max<std::uint64_t>(s.stats.max_frontier, s.nodes.size() - head);
  }
  finalize();
  return std::nullopt;
}

}  // namespace

std::map<std::string, PathLabel> enumerate_path_labels(
    const Automaton& aut, const EnumerateConfig& cfg) {
  PathSearch s;
  std::map<std::string, PathLabel> out;
  run_path_bfs(s, aut, cfg.max_len, cfg.max_pairs, nullptr, &out);
  return out;
}

SearchResult rat_member_bounded(const Automaton& aut, const Element& g,
                                std::size_t max_len, std::size_t max_pairs) {
  if (g.spec()->fingerprint() != aut.base()->fingerprint())
    throw SpecMismatchError("query element belongs to a different group");
  std::string key = canonical_key(g);
  PathSearch s;
  std::optional<std::uint32_t> hit =
      run_path_bfs(s, aut, max_len, max_pairs, &key, nullptr);
  SearchResult r;
  r.stats = s.stats;
  if (hit) {
    PathWitness p = backtrack_path(s, *hit);
    std::vector<std::int32_t> letters;
    letters.reserve(p.transitions.size());
    for (std::size_t t : p.transitions)
      letters.push_back(static_cast<std::int32_t>(t + 1));
    r.verdict = Verdict::Found;
    r.witness = GeneratorWord(std::move(letters), true);
    r.witness_length = r.witness->size();
  }
  return r;
}

}  // namespace rsk
