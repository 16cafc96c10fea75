#include "rsk/group.hpp"

#include <algorithm>
#include <utility>

#include "rsk/checked.hpp"

namespace rsk {

using detail::checked_add;
using detail::checked_neg;

// ---------------------------------------------------------------------------
// byte-string encodings
// ---------------------------------------------------------------------------

namespace {

void append_u8(std::string& s, std::uint8_t v) {
  s.push_back(static_cast<char>(v));
}

void append_u32(std::string& s, std::uint32_t v) {
  for (int b = 0; b < 4; ++b)
    s.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void append_i64(std::string& s, std::int64_t v) {
  std::uint64_t u = static_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b)
    s.push_back(static_cast<char>((u >> (8 * b)) & 0xff));
}

void append_i32(std::string& s, std::int32_t v) {
  std::uint32_t u = static_cast<std::uint32_t>(v);
  for (int b = 0; b < 4; ++b)
    s.push_back(static_cast<char>((u >> (8 * b)) & 0xff));
}

constexpr std::uint8_t kTagFreeAbelian = 1;
constexpr std::uint8_t kTagFreeGroup = 2;
constexpr std::uint8_t kTagSemidirect = 3;
constexpr std::uint8_t kTagWreath = 4;
constexpr std::uint8_t kTagProduct = 5;

std::string spec_fingerprint(const GroupSpec::Variant& v) {
  std::string s;
  if (const auto* fa = std::get_if<FreeAbelianSpec>(&v)) {
    append_u8(s, kTagFreeAbelian);
    append_u32(s, static_cast<std::uint32_t>(fa->rank));
  } else if (const auto* fg = std::get_if<FreeGroupSpec>(&v)) {
    append_u8(s, kTagFreeGroup);
    append_u32(s, static_cast<std::uint32_t>(fg->rank));
  } else if (const auto* sd = std::get_if<SemidirectLatticeSpec>(&v)) {
    append_u8(s, kTagSemidirect);
    append_u32(s, static_cast<std::uint32_t>(sd->rank));
    append_u8(s, static_cast<std::uint8_t>(sd->top));
    append_i64(s, sd->top_order);
    if (sd->top == TopKind::Finite)
      s += sd->top_group->fingerprint();
    else
      s += sd->action.byte_key();
  } else if (const auto* wr = std::get_if<WreathSpec>(&v)) {
    append_u8(s, kTagWreath);
    append_u32(s, static_cast<std::uint32_t>(wr->copies));
  } else {
    const auto& dp = std::get<DirectProductSpec>(v);
    append_u8(s, kTagProduct);
    append_u32(s, static_cast<std::uint32_t>(dp.factors.size()));
    for (const auto& f : dp.factors) {
      append_u32(s, static_cast<std::uint32_t>(f->fingerprint().size()));
      s += f->fingerprint();
    }
  }
  return s;
}

void validate_spec(const GroupSpec::Variant& v) {
  if (const auto* sd = std::get_if<SemidirectLatticeSpec>(&v)) {
    if (sd->rank == 0)
      throw InvalidParameterError("semidirect lattice rank must be positive");
    if (sd->top == TopKind::Finite) {
      if (!sd->top_group)
        throw InvalidParameterError("finite top requires a matrix group");
      if (sd->top_group->dim() != sd->rank)
        throw InvalidParameterError(
            "finite top group dimension does not match the lattice rank");
    } else {
      if (sd->action.dim() != sd->rank)
        throw InvalidParameterError(
            "action matrix dimension does not match the lattice rank");
      if (!sd->action.unimodular())
        throw InvalidParameterError(
            "action matrix is not invertible over the integers");
      if (sd->top == TopKind::Cyclic) {
        if (sd->top_order < 1)
          throw InvalidParameterError("cyclic top modulus must be positive");
        if (!sd->action.pow(sd->top_order).is_identity())
          throw InvalidParameterError(
              "action matrix does not have the declared cyclic order");
      } else if (sd->top_order != 0) {
        if (sd->top_order < 1)
          throw InvalidParameterError("declared action order must be positive");
        if (!sd->action.pow(sd->top_order).is_identity())
          throw InvalidParameterError(
              "action matrix does not satisfy the declared finite order");
      }
    }
  } else if (const auto* wr = std::get_if<WreathSpec>(&v)) {
    if (wr->copies == 0)
      throw InvalidParameterError("wreath product needs at least one copy");
  } else if (const auto* dp = std::get_if<DirectProductSpec>(&v)) {
    if (dp->factors.empty())
      throw InvalidParameterError("direct product needs at least one factor");
    for (const auto& f : dp->factors)
      if (!f) throw InvalidParameterError("direct product factor is null");
  }
}

}  // namespace

GroupSpec::GroupSpec(Variant v) : v_(std::move(v)) {
  validate_spec(v_);
  if (auto* sd = std::get_if<SemidirectLatticeSpec>(&v_)) {
    // cache action powers for a declared finite order
    if (sd->top != TopKind::Finite && sd->top_order > 0 &&
        sd->top_order <= 512) {
      sd->action_powers.clear();
      IntMatrix p = IntMatrix::identity(sd->rank);
      for (std::int64_t i = 0; i < sd->top_order; ++i) {
        sd->action_powers.push_back(p);
        p = p * sd->action;
      }
    }
  }
  fingerprint_ = spec_fingerprint(v_);
}

std::string GroupSpec::describe() const {
  if (const auto* fa = as<FreeAbelianSpec>())
    return "Z^" + std::to_string(fa->rank);
  if (const auto* fg = as<FreeGroupSpec>())
    return "F_" + std::to_string(fg->rank);
  if (const auto* sd = as<SemidirectLatticeSpec>()) {
    std::string base = "Z^" + std::to_string(sd->rank) + " : ";
    switch (sd->top) {
      case TopKind::Integer:
        return base + "Z" +
               (sd->top_order > 0
                    ? " (action order " + std::to_string(sd->top_order) + ")"
                    : "");
      case TopKind::Cyclic:
        return base + "Z_" + std::to_string(sd->top_order);
      case TopKind::Finite:
        return base + "A[" + std::to_string(sd->top_group->size()) + "]";
    }
  }
  if (const auto* wr = as<WreathSpec>())
    return "Z wr Z_" + std::to_string(wr->copies);
  const auto& dp = std::get<DirectProductSpec>(v_);
  std::string s;
  for (std::size_t i = 0; i < dp.factors.size(); ++i) {
    if (i) s += " x ";
    s += dp.factors[i]->describe();
  }
  return s;
}

GroupSpecPtr make_spec(GroupSpec::Variant v) {
  return std::make_shared<const GroupSpec>(std::move(v));
}

GroupSpecPtr free_abelian(std::size_t rank) {
  return make_spec(FreeAbelianSpec{rank});
}

GroupSpecPtr free_group(std::size_t rank) {
  return make_spec(FreeGroupSpec{rank});
}

GroupSpecPtr wreath(std::size_t copies) { return make_spec(WreathSpec{copies}); }

GroupSpecPtr direct_product(std::vector<GroupSpecPtr> factors) {
  return make_spec(DirectProductSpec{std::move(factors)});
}

GroupSpecPtr semidirect_integer_top(std::size_t rank, IntMatrix action,
                                    std::int64_t declared_order) {
  SemidirectLatticeSpec s;
  s.rank = rank;
  s.top = TopKind::Integer;
  s.top_order = declared_order;
  s.action = std::move(action);
  return make_spec(std::move(s));
}

GroupSpecPtr semidirect_cyclic_top(std::size_t rank, IntMatrix action,
                                   std::int64_t modulus) {
  SemidirectLatticeSpec s;
  s.rank = rank;
  s.top = TopKind::Cyclic;
  s.top_order = modulus;
  s.action = std::move(action);
  return make_spec(std::move(s));
}

GroupSpecPtr semidirect_finite_top(
    std::shared_ptr<const FiniteMatrixGroup> top) {
  if (!top) throw InvalidParameterError("finite top group is null");
  SemidirectLatticeSpec s;
  s.rank = top->dim();
  s.top = TopKind::Finite;
  s.top_group = std::move(top);
  return make_spec(std::move(s));
}

// ---------------------------------------------------------------------------
// element construction and validation
// ---------------------------------------------------------------------------

namespace {

void validate_payload(const GroupSpec& g, const Element::Payload& p) {
  if (const auto* fa = g.as<FreeAbelianSpec>()) {
    const auto* v = std::get_if<std::vector<std::int64_t>>(&p);
    if (!v || v->size() != fa->rank)
      throw InvalidParameterError("free abelian payload has wrong rank");
  } else if (const auto* fg = g.as<FreeGroupSpec>()) {
    const auto* w = std::get_if<FreeWordPayload>(&p);
    if (!w) throw InvalidParameterError("free group payload expected");
    for (std::size_t i = 0; i < w->letters.size(); ++i) {
      std::int32_t l = w->letters[i];
      if (l == 0 || static_cast<std::size_t>(l > 0 ? l : -l) > fg->rank)
        throw InvalidParameterError("free group letter out of range");
      if (i + 1 < w->letters.size() && w->letters[i + 1] == -l)
        throw InvalidParameterError("free group word is not freely reduced");
    }
  } else if (const auto* sd = g.as<SemidirectLatticeSpec>()) {
    const auto* e = std::get_if<SemidirectPayload>(&p);
    if (!e || e->vec.size() != sd->rank)
      throw InvalidParameterError("semidirect payload has wrong rank");
    if (sd->top == TopKind::Cyclic &&
        (e->top < 0 || e->top >= sd->top_order))
      throw InvalidParameterError("cyclic top residue out of range");
    if (sd->top == TopKind::Finite &&
        (e->top < 0 ||
         static_cast<std::size_t>(e->top) >= sd->top_group->size()))
      throw InvalidParameterError("finite top index out of range");
  } else if (const auto* wr = g.as<WreathSpec>()) {
    const auto* e = std::get_if<WreathPayload>(&p);
    if (!e || e->coords.size() != wr->copies)
      throw InvalidParameterError("wreath payload has wrong number of coordinates");
    if (e->shift < 0 || static_cast<std::size_t>(e->shift) >= wr->copies)
      throw InvalidParameterError("wreath shift out of range");
  } else {
    const auto& dp = *g.as<DirectProductSpec>();
    const auto* parts = std::get_if<std::vector<Element>>(&p);
    if (!parts || parts->size() != dp.factors.size())
      throw InvalidParameterError("direct product payload has wrong arity");
    for (std::size_t i = 0; i < parts->size(); ++i)
      if ((*parts)[i].spec()->fingerprint() != dp.factors[i]->fingerprint())
        throw SpecMismatchError("direct product part belongs to a different group");
  }
}

void require_same_spec(const Element& a, const Element& b) {
  if (a.spec()->fingerprint() != b.spec()->fingerprint())
    throw SpecMismatchError("elements belong to different groups");
}

}  // namespace

Element::Element(GroupSpecPtr spec, Payload payload)
    : spec_(std::move(spec)), payload_(std::move(payload)) {
  if (!spec_) throw InvalidParameterError("element spec is null");
  validate_payload(*spec_, payload_);
}

bool Element::operator==(const Element& o) const {
  return spec_->fingerprint() == o.spec_->fingerprint() &&
         payload_ == o.payload_;
}

Element vector_element(const GroupSpecPtr& spec, std::vector<std::int64_t> v) {
  return Element(spec, Element::Payload(std::move(v)));
}

Element free_word_element(const GroupSpecPtr& spec,
                          std::vector<std::int32_t> letters) {
  return Element(spec, FreeWordPayload{std::move(letters)});
}

Element semidirect_element(const GroupSpecPtr& spec,
                           std::vector<std::int64_t> vec, std::int64_t top) {
  return Element(spec, SemidirectPayload{std::move(vec), top});
}

Element wreath_element(const GroupSpecPtr& spec,
                       std::vector<std::int64_t> coords, std::int64_t shift) {
  return Element(spec, WreathPayload{std::move(coords), shift});
}

Element product_element(const GroupSpecPtr& spec, std::vector<Element> parts) {
  return Element(spec, Element::Payload(std::move(parts)));
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

namespace {

std::vector<std::int64_t> add_vec(std::span<const std::int64_t> a,
                                  std::span<const std::int64_t> b) {
  std::vector<std::int64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
  return out;
}

std::vector<std::int64_t> neg_vec(std::span<const std::int64_t> a) {
  std::vector<std::int64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_neg(a[i]);
  return out;
}

// u -> t u t^{-1} on the lattice
std::vector<std::int64_t> act(const SemidirectLatticeSpec& s, std::int64_t top,
                              std::span<const std::int64_t> v) {
  if (s.top == TopKind::Finite)
    return s.top_group->matrix(static_cast<std::size_t>(top)).apply(v);
  if (s.top_order > 0) {
    std::int64_t e = ((top % s.top_order) + s.top_order) % s.top_order;
    if (!s.action_powers.empty())
      return s.action_powers[static_cast<std::size_t>(e)].apply(v);
    return s.action.pow(e).apply(v);
  }
  return s.action.pow(top).apply(v);
}

std::int64_t combine_top(const SemidirectLatticeSpec& s, std::int64_t a,
                         std::int64_t b) {
  switch (s.top) {
    case TopKind::Integer:
      return checked_add(a, b);
    case TopKind::Cyclic:
      return (a + b) % s.top_order;
    case TopKind::Finite:
      return static_cast<std::int64_t>(
          s.top_group->mul(static_cast<std::size_t>(a),
                           static_cast<std::size_t>(b)));
  }
  throw Error("unreachable top kind");
}

std::int64_t invert_top(const SemidirectLatticeSpec& s, std::int64_t a) {
  switch (s.top) {
    case TopKind::Integer:
      return checked_neg(a);
    case TopKind::Cyclic:
      return (s.top_order - a) % s.top_order;
    case TopKind::Finite:
      return static_cast<std::int64_t>(
          s.top_group->inverse(static_cast<std::size_t>(a)));
  }
  throw Error("unreachable top kind");
}

// (sigma^k c)[j] = c[(j + k) mod n]; sigma is conjugation by the shift
// generator, s e_i s^{-1} = e_{i-1}
std::vector<std::int64_t> shift_coords(std::span<const std::int64_t> c,
                                       std::int64_t k, std::size_t n) {
  std::vector<std::int64_t> out(n);
  std::int64_t nn = static_cast<std::int64_t>(n);
  std::int64_t kk = ((k % nn) + nn) % nn;
  for (std::size_t j = 0; j < n; ++j)
    out[j] = c[static_cast<std::size_t>(
        (static_cast<std::int64_t>(j) + kk) % nn)];
  return out;
}

std::vector<std::int32_t> concat_reduced(const std::vector<std::int32_t>& a,
                                         const std::vector<std::int32_t>& b) {
  std::vector<std::int32_t> out = a;
  for (std::int32_t l : b) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

}  // namespace

Element identity(const GroupSpecPtr& spec) {
  if (const auto* fa = spec->as<FreeAbelianSpec>())
    return vector_element(spec, std::vector<std::int64_t>(fa->rank, 0));
  if (spec->as<FreeGroupSpec>()) return free_word_element(spec, {});
  if (const auto* sd = spec->as<SemidirectLatticeSpec>()) {
    std::int64_t top = sd->top == TopKind::Finite
                           ? static_cast<std::int64_t>(
                                 sd->top_group->identity_index())
                           : 0;
    return semidirect_element(spec, std::vector<std::int64_t>(sd->rank, 0), top);
  }
  if (const auto* wr = spec->as<WreathSpec>())
    return wreath_element(spec, std::vector<std::int64_t>(wr->copies, 0), 0);
  const auto& dp = *spec->as<DirectProductSpec>();
  std::vector<Element> parts;
  parts.reserve(dp.factors.size());
  for (const auto& f : dp.factors) parts.push_back(identity(f));
  return product_element(spec, std::move(parts));
}

Element multiply(const Element& a, const Element& b) {
  require_same_spec(a, b);
  const GroupSpec& g = *a.spec();
  if (g.as<FreeAbelianSpec>()) {
    return vector_element(a.spec(),
                          add_vec(a.as<std::vector<std::int64_t>>(),
                                  b.as<std::vector<std::int64_t>>()));
  }
  if (g.as<FreeGroupSpec>()) {
    return free_word_element(a.spec(),
                             concat_reduced(a.as<FreeWordPayload>().letters,
                                            b.as<FreeWordPayload>().letters));
  }
  if (const auto* sd = g.as<SemidirectLatticeSpec>()) {
    const auto& pa = a.as<SemidirectPayload>();
    const auto& pb = b.as<SemidirectPayload>();
    std::vector<std::int64_t> vec =
        add_vec(pa.vec, act(*sd, pa.top, pb.vec));
    return semidirect_element(a.spec(), std::move(vec),
                              combine_top(*sd, pa.top, pb.top));
  }
  if (const auto* wr = g.as<WreathSpec>()) {
    const auto& pa = a.as<WreathPayload>();
    const auto& pb = b.as<WreathPayload>();
    std::vector<std::int64_t> coords =
        add_vec(pa.coords, shift_coords(pb.coords, pa.shift, wr->copies));
    std::int64_t shift =
        (pa.shift + pb.shift) % static_cast<std::int64_t>(wr->copies);
    return wreath_element(a.spec(), std::move(coords), shift);
  }
  const auto& pa = a.as<std::vector<Element>>();
  const auto& pb = b.as<std::vector<Element>>();
  std::vector<Element> parts;
  parts.reserve(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i)
    parts.push_back(multiply(pa[i], pb[i]));
  return product_element(a.spec(), std::move(parts));
}

Element invert(const Element& a) {
  const GroupSpec& g = *a.spec();
  if (g.as<FreeAbelianSpec>())
    return vector_element(a.spec(), neg_vec(a.as<std::vector<std::int64_t>>()));
  if (g.as<FreeGroupSpec>()) {
    const auto& w = a.as<FreeWordPayload>().letters;
    std::vector<std::int32_t> out(w.rbegin(), w.rend());
    for (auto& l : out) l = -l;
    return free_word_element(a.spec(), std::move(out));
  }
  if (const auto* sd = g.as<SemidirectLatticeSpec>()) {
    const auto& p = a.as<SemidirectPayload>();
    std::int64_t ti = invert_top(*sd, p.top);
    return semidirect_element(a.spec(), neg_vec(act(*sd, ti, p.vec)), ti);
  }
  if (const auto* wr = g.as<WreathSpec>()) {
    const auto& p = a.as<WreathPayload>();
    std::int64_t n = static_cast<std::int64_t>(wr->copies);
    std::int64_t ki = (n - p.shift) % n;
    return wreath_element(a.spec(),
                          neg_vec(shift_coords(p.coords, ki, wr->copies)), ki);
  }
  const auto& pa = a.as<std::vector<Element>>();
  std::vector<Element> parts;
  parts.reserve(pa.size());
  for (const Element& e : pa) parts.push_back(invert(e));
  return product_element(a.spec(), std::move(parts));
}

std::string canonical_key(const Element& a) {
  std::string s;
  const GroupSpec& g = *a.spec();
  if (g.as<FreeAbelianSpec>()) {
    const auto& v = a.as<std::vector<std::int64_t>>();
    append_u8(s, kTagFreeAbelian);
    append_u32(s, static_cast<std::uint32_t>(v.size()));
    for (std::int64_t x : v) append_i64(s, x);
  } else if (g.as<FreeGroupSpec>()) {
    const auto& w = a.as<FreeWordPayload>().letters;
    append_u8(s, kTagFreeGroup);
    append_u32(s, static_cast<std::uint32_t>(w.size()));
    for (std::int32_t l : w) append_i32(s, l);
  } else if (g.as<SemidirectLatticeSpec>()) {
    const auto& p = a.as<SemidirectPayload>();
    append_u8(s, kTagSemidirect);
    append_u32(s, static_cast<std::uint32_t>(p.vec.size()));
    for (std::int64_t x : p.vec) append_i64(s, x);
    append_i64(s, p.top);
  } else if (g.as<WreathSpec>()) {
    const auto& p = a.as<WreathPayload>();
    append_u8(s, kTagWreath);
    append_u32(s, static_cast<std::uint32_t>(p.coords.size()));
    for (std::int64_t x : p.coords) append_i64(s, x);
    append_i64(s, p.shift);
  } else {
    const auto& parts = a.as<std::vector<Element>>();
    append_u8(s, kTagProduct);
    append_u32(s, static_cast<std::uint32_t>(parts.size()));
    for (const Element& e : parts) {
      std::string k = canonical_key(e);
      append_u32(s, static_cast<std::uint32_t>(k.size()));
      s += k;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// words
// ---------------------------------------------------------------------------

GeneratorWord::GeneratorWord(std::vector<std::int32_t> ls, bool positive)
    : letters(std::move(ls)), positive_only(positive) {
  for (std::int32_t l : letters) {
    if (l == 0) throw InvalidParameterError("generator letter must be nonzero");
    if (positive_only && l < 0)
      throw InvalidParameterError("positive word contains an inverted letter");
  }
}

GeneratorWord GeneratorWord::positive_word(
    std::span<const std::size_t> indices) {
  std::vector<std::int32_t> ls;
  ls.reserve(indices.size());
  for (std::size_t i : indices) ls.push_back(static_cast<std::int32_t>(i + 1));
  return GeneratorWord(std::move(ls), true);
}

Element evaluate_word(const GroupSpecPtr& spec, std::span<const Element> gens,
                      const GeneratorWord& w) {
  for (const Element& g : gens)
    if (g.spec()->fingerprint() != spec->fingerprint())
      throw SpecMismatchError("generator belongs to a different group");
  Element acc = identity(spec);
  for (std::int32_t l : w.letters) {
    std::size_t idx = static_cast<std::size_t>(l > 0 ? l : -l) - 1;
    if (idx >= gens.size())
      throw InvalidParameterError("generator reference " + std::to_string(l) +
                                  " out of range (" +
                                  std::to_string(gens.size()) + " generators)");
    acc = l > 0 ? multiply(acc, gens[idx]) : multiply(acc, invert(gens[idx]));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// canned groups
// ---------------------------------------------------------------------------

MarkedGroup build_prop3_group() {
  // conjugation by s rotates the lattice by a quarter turn
  GroupSpecPtr spec =
      semidirect_integer_top(2, IntMatrix(2, {0, -1, 1, 0}), 4);
  return MarkedGroup{spec, semidirect_element(spec, {1, 0}, 0),
                     semidirect_element(spec, {0, 0}, 1),
                     semidirect_element(spec, {0, 1}, 0)};
}

MarkedGroup build_cyclic_shift_group(std::size_t n) {
  if (n < 3)
    throw InvalidParameterError(
        "cyclic shift group needs n >= 3; the n = 2 shift admits extra "
        "value-s words");
  // conjugation by s maps e_i -> e_{i-1}
  std::vector<std::int64_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[((i + n - 1) % n) * n + i] = 1;
  GroupSpecPtr spec = semidirect_integer_top(n, IntMatrix(n, std::move(m)),
                                             static_cast<std::int64_t>(n));
  std::vector<std::int64_t> xv(n, 0), yv(n, 0);
  xv[0] = -1;
  yv[1] = 1;
  return MarkedGroup{spec, semidirect_element(spec, std::move(xv), 0),
                     semidirect_element(spec, std::vector<std::int64_t>(n, 0), 1),
                     semidirect_element(spec, std::move(yv), 0)};
}

Element wreath_edge_letter(const GroupSpecPtr& wreath_spec, std::size_t i,
                           std::size_t j) {
  const auto* wr = wreath_spec->as<WreathSpec>();
  if (!wr) throw InvalidParameterError("wreath spec expected");
  std::size_t n = wr->copies;
  if (i >= n || j >= n)
    throw InvalidParameterError("edge letter index out of range");
  std::vector<std::int64_t> coords(n, 0);
  coords[i] = 1;
  std::int64_t shift = static_cast<std::int64_t>((j + n - i) % n);
  return wreath_element(wreath_spec, std::move(coords), shift);
}

}  // namespace rsk
