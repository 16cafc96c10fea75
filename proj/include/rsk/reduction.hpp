#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rsk/automaton.hpp"
#include "rsk/group.hpp"
#include "rsk/matrix_group.hpp"
#include "rsk/oracle.hpp"

namespace rsk {

// ---------------------------------------------------------------------------
// word shape checks
// ---------------------------------------------------------------------------

// Letters 0 = x, 1 = s, 2 = y. Returns l when the word is x^l s y^l.
std::optional<std::size_t> check_xsy_shape(
    std::span<const std::uint32_t> word);

// Letters are (i, j) pairs over Z_n. Returns the vertex sequence when
// consecutive letters chain from 0 to 1.
std::optional<std::vector<std::uint32_t>> check_path_shape(
    std::size_t n,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> word);

// Letters are (a, b) index pairs into A. Returns the chain (starting at the
// identity, free endpoint) when consecutive letters link up. v must have a
// trivial stabilizer in A.
std::optional<std::vector<std::uint32_t>> check_vla_shape(
    const FiniteMatrixGroup& A, std::span<const std::int64_t> v,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> word);

// ---------------------------------------------------------------------------
// finite matrix group helpers
// ---------------------------------------------------------------------------

// All n x n matrices with a single ±1 entry per row and column; size n! 2^n.
// Capped at n <= 4.
FiniteMatrixGroup signed_permutation_group(std::size_t n);

struct TrivialStabVector {
  std::vector<std::int64_t> v;
  std::size_t orbit_size;  // equals |A|
};

// Tries (1, 2, ..., n) first, then integer boxes of growing radius in
// lexicographic order; the first vector whose orbit has size |A| wins.
TrivialStabVector find_trivial_stabilizer_vector(const FiniteMatrixGroup& A);

// Sum of a^T a over A: an integer A-invariant symmetric positive-definite
// form, kept unscaled so all arithmetic stays exact.
IntMatrix invariant_inner_product(const FiniteMatrixGroup& A);

// ---------------------------------------------------------------------------
// reduction bundles
// ---------------------------------------------------------------------------

enum class BundleVariant { ReducePair, PairToRat, MonToRat, TighterAut };

std::string variant_name(BundleVariant v);
BundleVariant variant_from_name(const std::string& s);

enum class GenOrigin { ALetter, Separator, BLetter, TEdge, YPow, CInvSep, VInvLetter };

std::string origin_name(GenOrigin o, int edge_from = -1, int edge_to = -1);

struct BundleGenerator {
  Element element;
  GenOrigin origin;
  int edge_from = -1;   // TEdge: normalized source state
  int edge_to = -1;     // TEdge: normalized target state
  int transition = -1;  // TEdge: first normalized transition with this letter
  int stage = 0;        // PairToRat: 0 = y block, 1 = edge block
};

// Output of a construction: the ambient product group, the generating set
// with origin tags, and the target section coordinates, together with the
// bookkeeping needed to translate witness words to automaton paths and back.
struct ReductionBundle {
  ReductionBundle(GroupSpecPtr amb, BundleVariant var)
      : ambient(std::move(amb)), target(identity(ambient)), variant(var) {}

  GroupSpecPtr ambient;  // direct product whose first factor is G
  std::vector<BundleGenerator> generators;
  Element target;  // section coordinates live in the factors past the first
  BundleVariant variant;
  std::size_t g_factors = 1;
  std::optional<Automaton> normalized;    // automaton-backed variants
  std::string source_hash;                // hash of the source automaton
  std::vector<std::size_t> state_images;  // TighterAut: state -> A index

  std::vector<Element> generator_elements() const;
  std::vector<int> generator_stages() const;
};

// Which marker group (x^l s y^l characterization) backs a construction.
struct MarkerChoice {
  enum Kind { Rotation, CyclicShift } kind = Rotation;
  std::size_t shift_copies = 3;  // CyclicShift only, >= 3
};

MarkedGroup make_marker_group(const MarkerChoice& choice);

// C_0 = A_0 x {x} ∪ {(1_G, s)} ∪ B_0 x {y} over G x H. The s-section of
// C_0* is exactly A_0* B_0*; the identity is inserted into both input sets so
// the two product lengths can always be padded to match.
ReductionBundle reduce_pair(const GroupSpecPtr& G, std::span<const Element> a0,
                            std::span<const Element> b0,
                            const MarkerChoice& choice = {});

struct PairToRatParts {
  Automaton normalized;
  GroupSpecPtr ambient;                 // G x (Z wr Z_m)
  std::vector<BundleGenerator> t_gens;  // (g, t_ij), stage 1
  BundleGenerator y_gen;                // (1_G, e_0^{-1}), stage 0
  Element target;                       // (1_G, s)
  std::size_t wreath_order;
};

// Edge letters over G x (Z wr Z_m): the subset is the s-section of the
// staged product <y>* T*. m is the normalized state count, or the next power
// of two at least that large when pad_to_power_of_two is set.
PairToRatParts pair_to_rat(const Automaton& aut,
                           bool pad_to_power_of_two = false);
ReductionBundle make_pair_to_rat_bundle(const Automaton& aut,
                                        bool pad_to_power_of_two = false);

// Plain-submonoid bundle over G x (Z wr Z_m) x H. The marker coordinate
// forces every target-valued word into the y^l (separator) edge^l shape, so
// the subset becomes an ordinary section.
ReductionBundle mon_to_rat(const Automaton& aut,
                           bool pad_to_power_of_two = false,
                           const MarkerChoice& choice = {});

// Tighter ambient G x (Z^n ⋊ A) x H. Normalized states are injected into A
// in element-list order starting at the identity (so the accepting state maps
// to the first non-identity element). Requires |A| >= normalized state count
// and a trivial-stabilizer vector. The generator set deliberately has no
// plain (1, 1, y) padding letter; adding one breaks the construction.
ReductionBundle tighter_aut(const Automaton& aut, const FiniteMatrixGroup& A,
                            const TrivialStabVector& v,
                            const MarkerChoice& choice = {});

// ---------------------------------------------------------------------------
// witness translation
// ---------------------------------------------------------------------------

// Positive word over the bundle generators that evaluates to the target in
// all non-G coordinates and to the path label in the G coordinate. Length
// 2l + 1 for a path of length l (MonToRat, TighterAut), 2l for PairToRat.
GeneratorWord path_to_witness(const ReductionBundle& bundle,
                              const PathWitness& p);

// Recovers the path from the origin tags of a target-valued word. Throws
// MalformedWitnessError when the word does not evaluate to the target section
// coordinates, and InternalConsistencyError when it does but the tags fail to
// chain into an accepting path.
PathWitness witness_to_path(const ReductionBundle& bundle,
                            const GeneratorWord& w);

// Stage-aware wrappers over the search oracle.
SearchResult bundle_member(const ReductionBundle& bundle, const Element& target,
                           const SearchConfig& cfg);
std::map<std::string, SectionEntry> bundle_section(const ReductionBundle& bundle,
                                                   const SearchConfig& cfg);

// Ambient element with the given G part and the target's section coordinates.
Element with_g_part(const ReductionBundle& bundle, const Element& g);

std::string automaton_hash(const Automaton& aut);

}  // namespace rsk
