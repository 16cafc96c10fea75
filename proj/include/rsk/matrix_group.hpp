#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsk/matrix.hpp"

namespace rsk {

// A finite subgroup of GL_n(Z), kept as its complete element list. Elements
// are addressed by index into that list; products and inverses are table
// lookups when the group is small enough and recomputed otherwise.
class FiniteMatrixGroup {
 public:
  static constexpr std::size_t kDefaultClosureCap = 10000;

  // The list must already be a group: contains the identity, closed under
  // products (inverses then exist by finiteness). The list order is kept.
  static FiniteMatrixGroup from_elements(std::vector<IntMatrix> elements);

  // Closes the generating set under multiplication, erroring past `cap`
  // elements. The result lists the identity first and the remaining elements
  // sorted by byte_key().
  static FiniteMatrixGroup closure(std::span<const IntMatrix> generators,
                                   std::size_t cap = kDefaultClosureCap);

  std::size_t size() const noexcept { return elems_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t identity_index() const noexcept { return identity_; }
  const IntMatrix& matrix(std::size_t i) const { return elems_.at(i); }
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const { return inv_.at(i); }
  std::optional<std::size_t> find(const IntMatrix& m) const;
  const std::string& fingerprint() const noexcept { return fingerprint_; }
  bool operator==(const FiniteMatrixGroup& o) const {
    return fingerprint_ == o.fingerprint_;
  }

 private:
  FiniteMatrixGroup() = default;
  void finish();  // builds index, tables, fingerprint

  std::size_t dim_ = 0;
  std::vector<IntMatrix> elems_;
  std::size_t identity_ = 0;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> mul_;  // dense table when size <= kTableLimit
  std::unordered_map<std::string, std::uint32_t> index_;
  std::string fingerprint_;

  static constexpr std::size_t kTableLimit = 2048;
};

}  // namespace rsk
