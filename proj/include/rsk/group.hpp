#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rsk/errors.hpp"
#include "rsk/matrix.hpp"
#include "rsk/matrix_group.hpp"

namespace rsk {

class GroupSpec;
using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

// ---------------------------------------------------------------------------
// group specifications
// ---------------------------------------------------------------------------

struct FreeAbelianSpec {
  std::size_t rank = 0;
};

struct FreeGroupSpec {
  std::size_t rank = 0;
};

enum class TopKind { Integer, Cyclic, Finite };

// Z^rank extended by a top group acting through integer matrices. The stored
// `action` is conjugation by the positive top generator, u -> t u t^{-1},
// which is what the product formula applies directly; the orientation is
// pinned by relation tests, not by convention.
struct SemidirectLatticeSpec {
  std::size_t rank = 0;
  TopKind top = TopKind::Integer;
  // Integer top: declared finite order of the action, 0 when undeclared. The
  // top exponent itself is never reduced by this. Cyclic top: the modulus.
  std::int64_t top_order = 0;
  IntMatrix action;                                    // Integer / Cyclic top
  std::shared_ptr<const FiniteMatrixGroup> top_group;  // Finite top
  std::vector<IntMatrix> action_powers;                // cache for finite order
};

// Z wr Z_n: n integer coordinates shifted cyclically by the top generator.
struct WreathSpec {
  std::size_t copies = 0;
};

struct DirectProductSpec {
  std::vector<GroupSpecPtr> factors;
};

class GroupSpec {
 public:
  using Variant = std::variant<FreeAbelianSpec, FreeGroupSpec,
                               SemidirectLatticeSpec, WreathSpec,
                               DirectProductSpec>;

  explicit GroupSpec(Variant v);

  const Variant& variant() const noexcept { return v_; }
  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&v_);
  }
  // Structural identity: equal fingerprints mean the same group with the same
  // encoding of elements.
  const std::string& fingerprint() const noexcept { return fingerprint_; }
  std::string describe() const;

 private:
  Variant v_;
  std::string fingerprint_;
};

GroupSpecPtr make_spec(GroupSpec::Variant v);
GroupSpecPtr free_abelian(std::size_t rank);
GroupSpecPtr free_group(std::size_t rank);
GroupSpecPtr wreath(std::size_t copies);
GroupSpecPtr direct_product(std::vector<GroupSpecPtr> factors);
GroupSpecPtr semidirect_integer_top(std::size_t rank, IntMatrix action,
                                    std::int64_t declared_order = 0);
GroupSpecPtr semidirect_cyclic_top(std::size_t rank, IntMatrix action,
                                   std::int64_t modulus);
GroupSpecPtr semidirect_finite_top(std::shared_ptr<const FiniteMatrixGroup> top);

// ---------------------------------------------------------------------------
// elements
// ---------------------------------------------------------------------------

struct FreeWordPayload {
  // 1-based generator letters, negative = inverse; always freely reduced.
  std::vector<std::int32_t> letters;
  bool operator==(const FreeWordPayload&) const = default;
};

struct SemidirectPayload {
  std::vector<std::int64_t> vec;
  // Integer top: the full exponent (not reduced by a finite action order);
  // Cyclic top: residue in [0, modulus); Finite top: element list index.
  std::int64_t top = 0;
  bool operator==(const SemidirectPayload&) const = default;
};

struct WreathPayload {
  std::vector<std::int64_t> coords;
  std::int64_t shift = 0;  // in [0, copies)
  bool operator==(const WreathPayload&) const = default;
};

// An exact canonical value of a group element. Immutable; all operations are
// pure functions, safe to share across threads.
class Element {
 public:
  using Payload = std::variant<std::vector<std::int64_t>,  // free abelian
                               FreeWordPayload, SemidirectPayload,
                               WreathPayload,
                               std::vector<Element>>;  // direct product

  Element(GroupSpecPtr spec, Payload payload);

  const GroupSpecPtr& spec() const noexcept { return spec_; }
  const Payload& payload() const noexcept { return payload_; }
  template <class T>
  const T& as() const {
    return std::get<T>(payload_);
  }

  bool operator==(const Element& o) const;

 private:
  GroupSpecPtr spec_;
  Payload payload_;
};

Element identity(const GroupSpecPtr& spec);
Element multiply(const Element& a, const Element& b);
Element invert(const Element& a);

// Length-prefixed little-endian encoding of the payload plus variant tags.
// Injective on each group and stable across runs.
std::string canonical_key(const Element& a);

// ---------------------------------------------------------------------------
// generator words
// ---------------------------------------------------------------------------

struct GeneratorWord {
  std::vector<std::int32_t> letters;  // 1-based references, negative = inverse
  bool positive_only = false;

  GeneratorWord() = default;
  GeneratorWord(std::vector<std::int32_t> ls, bool positive);
  static GeneratorWord positive_word(std::span<const std::size_t> indices);

  std::size_t size() const noexcept { return letters.size(); }
  bool operator==(const GeneratorWord&) const = default;
};

// Left-to-right product of the referenced generators; the empty word is the
// identity.
Element evaluate_word(const GroupSpecPtr& spec, std::span<const Element> gens,
                      const GeneratorWord& w);

// ---------------------------------------------------------------------------
// canned groups
// ---------------------------------------------------------------------------

// A group with marked elements x, s, y such that a positive word over
// {x, s, y} has value s exactly when it is x^l s y^l.
struct MarkedGroup {
  GroupSpecPtr spec;
  Element x, s, y;
};

// Z^2 ⋊ Z where the generator acts as the order-4 rotation; x, y are the
// lattice basis and s the top generator.
MarkedGroup build_prop3_group();

// Z^n ⋊ Z where the generator acts as the cyclic coordinate shift;
// x = e_0^{-1}, y = e_1. Requires n >= 3 (the n = 2 shift admits extra
// value-s words such as y s x).
MarkedGroup build_cyclic_shift_group(std::size_t n);

// e_i s^{j-i} in Z wr Z_n: the letter encoding edge i -> j of path words.
Element wreath_edge_letter(const GroupSpecPtr& wreath_spec, std::size_t i,
                           std::size_t j);

// payload constructors (validate the payload shape for the group)
Element vector_element(const GroupSpecPtr& spec, std::vector<std::int64_t> v);
Element free_word_element(const GroupSpecPtr& spec,
                          std::vector<std::int32_t> letters);
Element semidirect_element(const GroupSpecPtr& spec,
                           std::vector<std::int64_t> vec, std::int64_t top);
Element wreath_element(const GroupSpecPtr& spec,
                       std::vector<std::int64_t> coords, std::int64_t shift);
Element product_element(const GroupSpecPtr& spec, std::vector<Element> parts);

}  // namespace rsk
