#include "rsk/reduction.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "rsk/checked.hpp"
#include "rsk/json_io.hpp"

namespace rsk {

// ---------------------------------------------------------------------------
// word shape checks
// ---------------------------------------------------------------------------

std::optional<std::size_t> check_xsy_shape(
    std::span<const std::uint32_t> word) {
  for (std::uint32_t l : word)
    if (l > 2) throw InvalidParameterError("xsy letter out of range");
  std::size_t i = 0;
  while (i < word.size() && word[i] == 0) ++i;
  std::size_t l = i;
  if (i >= word.size() || word[i] != 1) return std::nullopt;
  ++i;
  std::size_t y = 0;
  while (i < word.size() && word[i] == 2) {
    ++i;
    ++y;
  }
  if (i != word.size() || y != l) return std::nullopt;
  return l;
}

std::optional<std::vector<std::uint32_t>> check_path_shape(
    std::size_t n,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> word) {
  for (const auto& [i, j] : word)
    if (i >= n || j >= n)
      throw InvalidParameterError("path letter index out of range");
  if (word.empty()) return std::nullopt;
  if (word.front().first != 0) return std::nullopt;
  std::vector<std::uint32_t> vertices{0};
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k > 0 && word[k].first != word[k - 1].second) return std::nullopt;
    vertices.push_back(word[k].second);
  }
  if (vertices.back() != 1) return std::nullopt;
  return vertices;
}

std::optional<std::vector<std::uint32_t>> check_vla_shape(
    const FiniteMatrixGroup& A, std::span<const std::int64_t> v,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> word) {
  if (v.size() != A.dim())
    throw InvalidParameterError("vector dimension does not match the group");
  std::set<std::string> orbit;
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::vector<std::int64_t> av = A.matrix(i).apply(v);
    std::string key;
    for (std::int64_t x : av) key += std::to_string(x) + ",";
    orbit.insert(std::move(key));
  }
  if (orbit.size() != A.size())
    throw InvalidParameterError("vector does not have a trivial stabilizer");
  for (const auto& [a, b] : word)
    if (a >= A.size() || b >= A.size())
      throw InvalidParameterError("chain letter index out of range");
  std::vector<std::uint32_t> chain{
      static_cast<std::uint32_t>(A.identity_index())};
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (word[k].first != chain.back()) return std::nullopt;
    chain.push_back(word[k].second);
  }
  return chain;
}

// ---------------------------------------------------------------------------
// finite matrix group helpers
// ---------------------------------------------------------------------------

FiniteMatrixGroup signed_permutation_group(std::size_t n) {
  if (n == 0) throw InvalidParameterError("dimension must be positive");
  if (n > 4)
    throw ResourceLimitError("signed permutation group capped at n <= 4 (n! 2^n grows too fast)");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<IntMatrix> elems;
  do {
    for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs) {
      std::vector<std::int64_t> m(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        m[i * n + perm[i]] = (signs >> i) & 1 ? -1 : 1;
      elems.emplace_back(n, std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  // reorder canonically (identity first, then byte-key order) and build tables
  return FiniteMatrixGroup::closure(elems, elems.size());
}

namespace {

std::string vec_key(std::span<const std::int64_t> v) {
  std::string s;
  for (std::int64_t x : v) s += std::to_string(x) + ",";
  return s;
}

std::size_t orbit_size(const FiniteMatrixGroup& A,
                       std::span<const std::int64_t> v) {
  std::set<std::string> orbit;
  for (std::size_t i = 0; i < A.size(); ++i)
    orbit.insert(vec_key(A.matrix(i).apply(v)));
  return orbit.size();
}

}  // namespace

TrivialStabVector find_trivial_stabilizer_vector(const FiniteMatrixGroup& A) {
  std::size_t n = A.dim();
  std::vector<std::int64_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>(i + 1);
  if (orbit_size(A, v) == A.size()) return {std::move(v), A.size()};

  // boxes of growing radius; the fixed spaces of non-identity elements are
  // proper subspaces, so some lattice vector escapes them all
  for (std::int64_t radius = 1;; ++radius) {
    std::vector<std::int64_t> w(n, -radius);
    while (true) {
      bool on_shell = false;
      for (std::int64_t x : w)
        if (x == radius || x == -radius) on_shell = true;
      if (on_shell && orbit_size(A, w) == A.size()) return {w, A.size()};
      std::size_t k = n;
      while (k > 0 && w[k - 1] == radius) w[--k] = -radius;
      if (k == 0) break;
      ++w[k - 1];
    }
  }
}

IntMatrix invariant_inner_product(const FiniteMatrixGroup& A) {
  std::size_t n = A.dim();
  IntMatrix g(n, std::vector<std::int64_t>(n * n, 0));
  for (std::size_t i = 0; i < A.size(); ++i) {
    const IntMatrix& a = A.matrix(i);
    IntMatrix ata = a.transpose() * a;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        g(r, c) = detail::checked_add(g(r, c), ata(r, c));
  }
  return g;
}

// ---------------------------------------------------------------------------
// bundles
// ---------------------------------------------------------------------------

std::string variant_name(BundleVariant v) {
  switch (v) {
    case BundleVariant::ReducePair: return "ReducePair";
    case BundleVariant::PairToRat: return "PairToRat";
    case BundleVariant::MonToRat: return "MonToRat";
    case BundleVariant::TighterAut: return "TighterAut";
  }
  throw Error("unreachable variant");
}

BundleVariant variant_from_name(const std::string& s) {
  if (s == "ReducePair") return BundleVariant::ReducePair;
  if (s == "PairToRat") return BundleVariant::PairToRat;
  if (s == "MonToRat") return BundleVariant::MonToRat;
  if (s == "TighterAut") return BundleVariant::TighterAut;
  throw SchemaError("unknown bundle variant '" + s + "'");
}

std::string origin_name(GenOrigin o, int edge_from, int edge_to) {
  switch (o) {
    case GenOrigin::ALetter: return "A-letter";
    case GenOrigin::Separator: return "separator";
    case GenOrigin::BLetter: return "B-letter";
    case GenOrigin::TEdge:
      return "T-edge(" + std::to_string(edge_from) + "," +
             std::to_string(edge_to) + ")";
    case GenOrigin::YPow: return "yPow";
    case GenOrigin::CInvSep: return "cInvSep";
    case GenOrigin::VInvLetter: return "vInvLetter";
  }
  throw Error("unreachable origin");
}

std::vector<Element> ReductionBundle::generator_elements() const {
  std::vector<Element> out;
  out.reserve(generators.size());
  for (const BundleGenerator& g : generators) out.push_back(g.element);
  return out;
}

std::vector<int> ReductionBundle::generator_stages() const {
  std::vector<int> out;
  out.reserve(generators.size());
  for (const BundleGenerator& g : generators) out.push_back(g.stage);
  return out;
}

MarkedGroup make_marker_group(const MarkerChoice& choice) {
  if (choice.kind == MarkerChoice::Rotation) return build_prop3_group();
  return build_cyclic_shift_group(choice.shift_copies);
}

std::string automaton_hash(const Automaton& aut) {
  std::string dump = automaton_to_json(aut).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

namespace {

// appends elements not present yet (by canonical key), recording whether the
// identity was among them
void append_unique(std::vector<Element>& out, std::set<std::string>& seen,
                   std::span<const Element> in, const GroupSpecPtr& G) {
  for (const Element& e : in) {
    if (e.spec()->fingerprint() != G->fingerprint())
      throw SpecMismatchError("set element belongs to a different group");
    if (seen.insert(canonical_key(e)).second) out.push_back(e);
  }
}

Element pair3(const GroupSpecPtr& ambient, Element a, Element b, Element c) {
  return product_element(ambient, {std::move(a), std::move(b), std::move(c)});
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace

ReductionBundle reduce_pair(const GroupSpecPtr& G, std::span<const Element> a0,
                            std::span<const Element> b0,
                            const MarkerChoice& choice) {
  MarkedGroup h = make_marker_group(choice);
  GroupSpecPtr ambient = direct_product({G, h.spec});
  Element one_g = identity(G);

  std::vector<Element> a_set, b_set;
  {
    std::set<std::string> seen;
    append_unique(a_set, seen, a0, G);
    if (seen.insert(canonical_key(one_g)).second) a_set.push_back(one_g);
  }
  {
    std::set<std::string> seen;
    append_unique(b_set, seen, b0, G);
    if (seen.insert(canonical_key(one_g)).second) b_set.push_back(one_g);
  }

  ReductionBundle bundle(ambient, BundleVariant::ReducePair);
  for (const Element& a : a_set)
    bundle.generators.push_back(
        {product_element(ambient, {a, h.x}), GenOrigin::ALetter});
  bundle.generators.push_back(
      {product_element(ambient, {one_g, h.s}), GenOrigin::Separator});
  for (const Element& b : b_set)
    bundle.generators.push_back(
        {product_element(ambient, {b, h.y}), GenOrigin::BLetter});
  bundle.target = product_element(ambient, {one_g, h.s});
  return bundle;
}

PairToRatParts pair_to_rat(const Automaton& aut, bool pad_to_power_of_two) {
  Automaton norm = normalize_single_accept(aut);
  std::size_t m = norm.state_count();
  std::size_t order = pad_to_power_of_two ? next_pow2(m) : m;
  GroupSpecPtr h1 = wreath(order);
  GroupSpecPtr G = aut.base();
  GroupSpecPtr ambient = direct_product({G, h1});

  PairToRatParts parts{std::move(norm), ambient, {}, BundleGenerator{identity(ambient), GenOrigin::YPow}, identity(ambient), order};

  std::set<std::string> seen;
  for (std::size_t k = 0; k < parts.normalized.transitions().size(); ++k) {
    const Transition& t = parts.normalized.transitions()[k];
    Element letter = product_element(
        ambient, {t.label, wreath_edge_letter(h1, t.from, t.to)});
    if (!seen.insert(canonical_key(letter)).second) continue;
    parts.t_gens.push_back({std::move(letter), GenOrigin::TEdge,
                            static_cast<int>(t.from), static_cast<int>(t.to),
                            static_cast<int>(k), 1});
  }

  std::vector<std::int64_t> e0inv(order, 0);
  e0inv[0] = -1;
  parts.y_gen = BundleGenerator{
      product_element(ambient,
                      {identity(G), wreath_element(h1, std::move(e0inv), 0)}),
      GenOrigin::YPow, -1, -1, -1, 0};
  parts.target = product_element(
      ambient, {identity(G),
                wreath_element(h1, std::vector<std::int64_t>(order, 0), 1)});
  return parts;
}

ReductionBundle make_pair_to_rat_bundle(const Automaton& aut,
                                        bool pad_to_power_of_two) {
  PairToRatParts parts = pair_to_rat(aut, pad_to_power_of_two);
  ReductionBundle bundle(parts.ambient, BundleVariant::PairToRat);
  bundle.generators.push_back(parts.y_gen);
  for (auto& g : parts.t_gens) bundle.generators.push_back(std::move(g));
  bundle.target = parts.target;
  bundle.source_hash = automaton_hash(aut);
  bundle.normalized = std::move(parts.normalized);
  return bundle;
}

ReductionBundle mon_to_rat(const Automaton& aut, bool pad_to_power_of_two,
                           const MarkerChoice& choice) {
  PairToRatParts parts = pair_to_rat(aut, pad_to_power_of_two);
  MarkedGroup h2 = make_marker_group(choice);
  GroupSpecPtr G = aut.base();
  const auto& h1 =
      parts.ambient->as<DirectProductSpec>()->factors[1];
  GroupSpecPtr ambient = direct_product({G, h1, h2.spec});
  Element one_g = identity(G);
  Element one_h1 = identity(h1);

  ReductionBundle bundle(ambient, BundleVariant::MonToRat);
  // no identity padding letters: the y block and the edge block always have
  // equal length here
  const auto& y_parts = parts.y_gen.element.as<std::vector<Element>>();
  bundle.generators.push_back(
      {pair3(ambient, one_g, y_parts[1], h2.x), GenOrigin::YPow});
  bundle.generators.push_back(
      {pair3(ambient, one_g, one_h1, h2.s), GenOrigin::Separator});
  for (const BundleGenerator& t : parts.t_gens) {
    const auto& t_parts = t.element.as<std::vector<Element>>();
    bundle.generators.push_back({pair3(ambient, t_parts[0], t_parts[1], h2.y),
                                 GenOrigin::TEdge, t.edge_from, t.edge_to,
                                 t.transition, 0});
  }
  const auto& target_parts = parts.target.as<std::vector<Element>>();
  bundle.target = pair3(ambient, one_g, target_parts[1], h2.s);
  bundle.source_hash = automaton_hash(aut);
  bundle.normalized = std::move(parts.normalized);
  return bundle;
}

ReductionBundle tighter_aut(const Automaton& aut, const FiniteMatrixGroup& A,
                            const TrivialStabVector& v,
                            const MarkerChoice& choice) {
  Automaton norm = normalize_single_accept(aut);
  std::size_t m = norm.state_count();
  if (m > A.size())
    throw InvalidParameterError(
        "too many states: " + std::to_string(m) +
        " normalized states need a finite group of size >= " +
        std::to_string(m) + ", got " + std::to_string(A.size()));
  if (v.v.size() != A.dim())
    throw InvalidParameterError("vector dimension does not match the group");
  if (orbit_size(A, v.v) != A.size())
    throw InvalidParameterError("vector does not have a trivial stabilizer");

  // inject states into A in element-list order starting at the identity;
  // state 1 (the accepting state) lands on the first non-identity element
  std::vector<std::size_t> images;
  images.push_back(A.identity_index());
  for (std::size_t i = 0; images.size() < m && i < A.size(); ++i)
    if (i != A.identity_index()) images.push_back(i);

  MarkedGroup h = make_marker_group(choice);
  auto a_shared = std::make_shared<const FiniteMatrixGroup>(A);
  GroupSpecPtr lattice = semidirect_finite_top(a_shared);
  GroupSpecPtr G = aut.base();
  GroupSpecPtr ambient = direct_product({G, lattice, h.spec});
  Element one_g = identity(G);
  std::size_t n = A.dim();

  ReductionBundle bundle(ambient, BundleVariant::TighterAut);
  std::set<std::string> seen;
  for (std::size_t k = 0; k < norm.transitions().size(); ++k) {
    const Transition& t = norm.transitions()[k];
    std::size_t a = images[t.from], b = images[t.to];
    std::size_t a_inv = A.inverse(a);
    // a^{-1} v b = (a^{-1} v, a^{-1} b) in vector-first form
    Element mid = semidirect_element(
        lattice, A.matrix(a_inv).apply(v.v),
        static_cast<std::int64_t>(A.mul(a_inv, b)));
    Element letter = pair3(ambient, t.label, std::move(mid), h.x);
    if (!seen.insert(canonical_key(letter)).second) continue;
    bundle.generators.push_back({std::move(letter), GenOrigin::TEdge,
                                 static_cast<int>(t.from),
                                 static_cast<int>(t.to), static_cast<int>(k),
                                 0});
  }
  std::size_t c = images[1];
  bundle.generators.push_back(
      {pair3(ambient, one_g,
             semidirect_element(lattice, std::vector<std::int64_t>(n, 0),
                                static_cast<std::int64_t>(A.inverse(c))),
             h.s),
       GenOrigin::CInvSep});
  std::vector<std::int64_t> v_neg(n);
  for (std::size_t i = 0; i < n; ++i) v_neg[i] = detail::checked_neg(v.v[i]);
  bundle.generators.push_back(
      {pair3(ambient, one_g,
             semidirect_element(lattice, std::move(v_neg),
                                static_cast<std::int64_t>(A.identity_index())),
             h.y),
       GenOrigin::VInvLetter});
  bundle.target = pair3(ambient, one_g, identity(lattice), h.s);
  bundle.source_hash = automaton_hash(aut);
  bundle.normalized = std::move(norm);
  bundle.state_images = std::move(images);
  return bundle;
}

// ---------------------------------------------------------------------------
// witness translation
// ---------------------------------------------------------------------------

namespace {

// generator index for every normalized transition (duplicate letters collapse
// onto the first generator that carries them)
std::vector<std::size_t> transition_generator_map(const ReductionBundle& b) {
  std::unordered_map<std::string, std::size_t> by_key;
  for (std::size_t i = 0; i < b.generators.size(); ++i)
    if (b.generators[i].origin == GenOrigin::TEdge)
      by_key.emplace(canonical_key(b.generators[i].element), i);
  const Automaton& norm = *b.normalized;
  std::vector<std::size_t> out(norm.transitions().size());
  for (std::size_t k = 0; k < norm.transitions().size(); ++k) {
    // rebuild the letter this transition produces and look it up
    std::optional<Element> letter;
    for (std::size_t i = 0; i < b.generators.size(); ++i) {
      const BundleGenerator& g = b.generators[i];
      if (g.origin == GenOrigin::TEdge && g.transition == static_cast<int>(k)) {
        letter = g.element;
        break;
      }
    }
    if (letter) {
      out[k] = by_key.at(canonical_key(*letter));
      continue;
    }
    // duplicate transition: find the generator with matching endpoints and a
    // matching label
    const Transition& t = norm.transitions()[k];
    bool found = false;
    for (std::size_t i = 0; i < b.generators.size() && !found; ++i) {
      const BundleGenerator& g = b.generators[i];
      if (g.origin != GenOrigin::TEdge) continue;
      if (g.edge_from != static_cast<int>(t.from) ||
          g.edge_to != static_cast<int>(t.to))
        continue;
      const auto& parts = g.element.as<std::vector<Element>>();
      if (parts[0] == t.label) {
        out[k] = i;
        found = true;
      }
    }
    if (!found)
      throw InternalConsistencyError(
          "normalized transition has no matching bundle generator");
  }
  return out;
}

std::size_t find_origin(const ReductionBundle& b, GenOrigin o) {
  for (std::size_t i = 0; i < b.generators.size(); ++i)
    if (b.generators[i].origin == o) return i;
  throw InternalConsistencyError("bundle lacks a generator with origin " +
                                 origin_name(o));
}

}  // namespace

GeneratorWord path_to_witness(const ReductionBundle& bundle,
                              const PathWitness& p) {
  if (!bundle.normalized)
    throw InvalidParameterError("bundle has no source automaton");
  const Automaton& norm = *bundle.normalized;
  if (!valid_path(norm, p))
    throw InvalidParameterError("path is not a valid accepting path");
  std::vector<std::size_t> t_map = transition_generator_map(bundle);
  std::size_t l = p.size();
  std::vector<std::size_t> letters;
  switch (bundle.variant) {
    case BundleVariant::PairToRat: {
      std::size_t y = find_origin(bundle, GenOrigin::YPow);
      letters.insert(letters.end(), l, y);
      for (std::size_t t : p.transitions) letters.push_back(t_map.at(t));
      break;
    }
    case BundleVariant::MonToRat: {
      std::size_t y = find_origin(bundle, GenOrigin::YPow);
      std::size_t sep = find_origin(bundle, GenOrigin::Separator);
      letters.insert(letters.end(), l, y);
      letters.push_back(sep);
      for (std::size_t t : p.transitions) letters.push_back(t_map.at(t));
      break;
    }
    case BundleVariant::TighterAut: {
      std::size_t sep = find_origin(bundle, GenOrigin::CInvSep);
      std::size_t vi = find_origin(bundle, GenOrigin::VInvLetter);
      for (std::size_t t : p.transitions) letters.push_back(t_map.at(t));
      letters.push_back(sep);
      letters.insert(letters.end(), l, vi);
      break;
    }
    case BundleVariant::ReducePair:
      throw InvalidParameterError(
          "pair bundles are not backed by an automaton");
  }
  return GeneratorWord::positive_word(letters);
}

PathWitness witness_to_path(const ReductionBundle& bundle,
                            const GeneratorWord& w) {
  if (!bundle.normalized)
    throw InvalidParameterError("bundle has no source automaton");
  std::vector<Element> gens = bundle.generator_elements();
  for (std::int32_t l : w.letters)
    if (l <= 0 || static_cast<std::size_t>(l) > gens.size())
      throw InvalidParameterError("witness letter out of range");

  Element value = evaluate_word(bundle.ambient, gens, w);
  const auto& val_parts = value.as<std::vector<Element>>();
  const auto& tgt_parts = bundle.target.as<std::vector<Element>>();
  for (std::size_t i = bundle.g_factors; i < tgt_parts.size(); ++i)
    if (!(val_parts[i] == tgt_parts[i]))
      throw MalformedWitnessError(
          "word does not evaluate to the target section coordinates");

  // scan origin tags into blocks
  std::vector<const BundleGenerator*> tagged;
  tagged.reserve(w.letters.size());
  for (std::int32_t l : w.letters)
    tagged.push_back(&bundle.generators[static_cast<std::size_t>(l) - 1]);

  auto shape_error = [&](const std::string& msg) -> Error {
    if (bundle.variant == BundleVariant::PairToRat)
      return MalformedWitnessError(msg + " (word is outside the staged product language)");
    return InternalConsistencyError(msg);
  };

  std::vector<const BundleGenerator*> edges;
  std::size_t pre = 0, post = 0, seps = 0;
  GenOrigin pre_origin = bundle.variant == BundleVariant::TighterAut
                             ? GenOrigin::TEdge
                             : GenOrigin::YPow;
  GenOrigin sep_origin = bundle.variant == BundleVariant::TighterAut
                             ? GenOrigin::CInvSep
                             : GenOrigin::Separator;
  GenOrigin post_origin = bundle.variant == BundleVariant::TighterAut
                              ? GenOrigin::VInvLetter
                              : GenOrigin::TEdge;
  bool has_sep = bundle.variant != BundleVariant::PairToRat;
  std::size_t phase = 0;  // 0 = pre block, 1 = after separator / post block
  for (const BundleGenerator* g : tagged) {
    if (phase == 0 && g->origin == pre_origin) {
      ++pre;
      if (g->origin == GenOrigin::TEdge) edges.push_back(g);
      continue;
    }
    if (has_sep && g->origin == sep_origin) {
      ++seps;
      if (seps > 1) throw shape_error("witness has more than one separator letter");
      phase = 1;
      continue;
    }
    if (g->origin == post_origin && (phase == 1 || !has_sep)) {
      phase = 1;
      ++post;
      if (g->origin == GenOrigin::TEdge) edges.push_back(g);
      continue;
    }
    throw shape_error("witness letter '" +
                      origin_name(g->origin, g->edge_from, g->edge_to) +
                      "' is out of place");
  }
  if (has_sep && seps != 1)
    throw shape_error("witness lacks the separator letter");
  if (pre != post)
    throw shape_error("witness block lengths differ (" + std::to_string(pre) +
                      " vs " + std::to_string(post) + ")");

  // the edge tags must chain 0 -> ... -> 1
  std::size_t at = 0;
  for (const BundleGenerator* e : edges) {
    if (static_cast<std::size_t>(e->edge_from) != at)
      throw InternalConsistencyError(
          "witness edge tags do not chain into a path");
    at = static_cast<std::size_t>(e->edge_to);
  }
  if (at != 1)
    throw InternalConsistencyError(
        "witness edge tags do not reach the accepting state");

  PathWitness p;
  for (const BundleGenerator* e : edges)
    p.transitions.push_back(static_cast<std::size_t>(e->transition));
  return p;
}

namespace {

// Feasibility pruning on the trailing ambient factor. Words that hit a
// section must end with the trailing coordinate equal to the target's, so a
// prefix is useful only if some suffix of the remaining length can move its
// trailing coordinate there. Suffix values ignore generator stages (a
// superset, hence sound). Returns an always-true hook when the projection
// itself is too large to tabulate.
KeepHook last_factor_pruner(const ReductionBundle& bundle,
                            const Element& target, std::size_t max_len) {
  const auto& factors = bundle.ambient->as<DirectProductSpec>()->factors;
  GroupSpecPtr last = factors.back();
  std::vector<Element> proj;
  proj.reserve(bundle.generators.size());
  for (const BundleGenerator& g : bundle.generators)
    proj.push_back(g.element.as<std::vector<Element>>().back());

  constexpr std::size_t kTableCap = 500000;
  auto table = std::make_shared<std::unordered_map<std::string, std::uint32_t>>();
  std::vector<Element> layer{identity(last)};
  table->emplace(canonical_key(layer[0]), 0);
  for (std::uint32_t len = 1; len <= max_len && !layer.empty(); ++len) {
    std::vector<Element> next;
    for (const Element& e : layer)
      for (const Element& p : proj) {
        Element v = multiply(e, p);
        std::string key = canonical_key(v);
        if (table->count(key)) continue;
        if (table->size() >= kTableCap)
          return [](const Element&, std::size_t) { return true; };
        table->emplace(std::move(key), len);
        next.push_back(std::move(v));
      }
    layer = std::move(next);
  }

  Element want = target.as<std::vector<Element>>().back();
  return [table, want, max_len](const Element& e, std::size_t len) {
    const Element& have = e.as<std::vector<Element>>().back();
    auto it = table->find(canonical_key(multiply(invert(have), want)));
    return it != table->end() && it->second + len <= max_len;
  };
}

}  // namespace

SearchResult bundle_member(const ReductionBundle& bundle, const Element& target,
                           const SearchConfig& cfg) {
  std::vector<Element> gens = bundle.generator_elements();
  std::vector<int> stages = bundle.generator_stages();
  return submonoid_member_bounded_pruned(
      bundle.ambient, gens, target, cfg, stages,
      last_factor_pruner(bundle, target, cfg.max_len));
}

std::map<std::string, SectionEntry> bundle_section(const ReductionBundle& bundle,
                                                   const SearchConfig& cfg) {
  std::vector<Element> gens = bundle.generator_elements();
  std::vector<int> stages = bundle.generator_stages();
  return section_bounded_pruned(bundle.ambient, gens, bundle.g_factors,
                                bundle.target, cfg, stages,
                                last_factor_pruner(bundle, bundle.target,
                                                   cfg.max_len));
}

Element with_g_part(const ReductionBundle& bundle, const Element& g) {
  const auto& tgt_parts = bundle.target.as<std::vector<Element>>();
  std::vector<Element> parts;
  parts.reserve(tgt_parts.size());
  parts.push_back(g);
  for (std::size_t i = 1; i < tgt_parts.size(); ++i)
    parts.push_back(tgt_parts[i]);
  return product_element(bundle.ambient, std::move(parts));
}

}  // namespace rsk
