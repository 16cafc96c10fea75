#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rsk {

// Dense square integer matrix, row-major. All arithmetic is exact; an
// operation that would leave the 64-bit range throws ArithmeticOverflowError.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t n, std::vector<std::int64_t> data);
  static IntMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }
  std::int64_t& operator()(std::size_t i, std::size_t j) {
    return a_[i * n_ + j];
  }
  std::span<const std::int64_t> data() const noexcept { return a_; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  std::vector<std::int64_t> apply(std::span<const std::int64_t> v) const;
  IntMatrix transpose() const;

  std::int64_t determinant() const;  // Bareiss, fraction-free
  bool unimodular() const;
  IntMatrix inverse() const;  // requires determinant ±1
  IntMatrix pow(std::int64_t e) const;

  // Sylvester criterion on the leading principal minors; the matrix must be
  // symmetric.
  bool positive_definite() const;

  bool is_identity() const;
  bool operator==(const IntMatrix&) const = default;

  // Dimension plus entries, little-endian. Total order used wherever a
  // deterministic ordering of matrices is needed.
  std::string byte_key() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

}  // namespace rsk
