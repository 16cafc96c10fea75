#include "rsk/matrix.hpp"

#include <cstring>
#include <utility>

#include "rsk/checked.hpp"
#include "rsk/errors.hpp"

namespace rsk {

using detail::to_i64;

IntMatrix::IntMatrix(std::size_t n, std::vector<std::int64_t> data)
    : n_(n), a_(std::move(data)) {
  if (a_.size() != n_ * n_)
    throw InvalidParameterError("matrix data size does not match dimension");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  std::vector<std::int64_t> d(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1;
  return IntMatrix(n, std::move(d));
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (n_ != rhs.n_) throw InvalidParameterError("matrix dimension mismatch");
  std::vector<std::int64_t> out(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      __int128 acc = 0;
      for (std::size_t k = 0; k < n_; ++k)
        acc += static_cast<__int128>(a_[i * n_ + k]) * rhs.a_[k * n_ + j];
      out[i * n_ + j] = to_i64(acc);
    }
  return IntMatrix(n_, std::move(out));
}

std::vector<std::int64_t> IntMatrix::apply(
    std::span<const std::int64_t> v) const {
  if (v.size() != n_) throw InvalidParameterError("vector dimension mismatch");
  std::vector<std::int64_t> out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < n_; ++j)
      acc += static_cast<__int128>(a_[i * n_ + j]) * v[j];
    out[i] = to_i64(acc);
  }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  std::vector<std::int64_t> out(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[j * n_ + i] = a_[i * n_ + j];
  return IntMatrix(n_, std::move(out));
}

std::int64_t IntMatrix::determinant() const {
  if (n_ == 0) return 1;
  std::vector<__int128> m(a_.begin(), a_.end());
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (m[k * n_ + k] == 0) {
      std::size_t p = k + 1;
      while (p < n_ && m[p * n_ + k] == 0) ++p;
      if (p == n_) return 0;
      for (std::size_t j = 0; j < n_; ++j)
        std::swap(m[k * n_ + j], m[p * n_ + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n_; ++i)
      for (std::size_t j = k + 1; j < n_; ++j)
        m[i * n_ + j] =
            (m[i * n_ + j] * m[k * n_ + k] - m[i * n_ + k] * m[k * n_ + j]) /
            prev;
    prev = m[k * n_ + k];
  }
  return to_i64(sign * m[n_ * n_ - 1]);
}

bool IntMatrix::unimodular() const {
  std::int64_t d = determinant();
  return d == 1 || d == -1;
}

namespace {

IntMatrix minor_of(const IntMatrix& m, std::size_t row, std::size_t col) {
  std::size_t n = m.dim();
  std::vector<std::int64_t> out;
  out.reserve((n - 1) * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == col) continue;
      out.push_back(m(i, j));
    }
  }
  return IntMatrix(n - 1, std::move(out));
}

}  // namespace

IntMatrix IntMatrix::inverse() const {
  std::int64_t det = determinant();
  if (det != 1 && det != -1)
    throw InvalidParameterError(
        "matrix is not invertible over the integers (determinant " +
        std::to_string(det) + ")");
  if (n_ == 0) return *this;
  IntMatrix adj(n_, std::vector<std::int64_t>(n_ * n_, 0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      std::int64_t c = minor_of(*this, i, j).determinant();
      if ((i + j) % 2 == 1) c = detail::checked_neg(c);
      adj(j, i) = c;
    }
  if (det == -1)
    for (std::size_t i = 0; i < n_ * n_; ++i)
      adj.a_[i] = detail::checked_neg(adj.a_[i]);
  return adj;
}

IntMatrix IntMatrix::pow(std::int64_t e) const {
  IntMatrix base = e >= 0 ? *this : inverse();
  // two's-complement magnitude, safe for INT64_MIN
  std::uint64_t k = e >= 0 ? static_cast<std::uint64_t>(e)
                           : ~static_cast<std::uint64_t>(e) + 1;
  IntMatrix r = identity(n_);
  while (k != 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k != 0) base = base * base;
  }
  return r;
}

bool IntMatrix::positive_definite() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (a_[i * n_ + j] != a_[j * n_ + i]) return false;
  for (std::size_t k = 1; k <= n_; ++k) {
    std::vector<std::int64_t> sub;
    sub.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub.push_back(a_[i * n_ + j]);
    if (IntMatrix(k, std::move(sub)).determinant() <= 0) return false;
  }
  return true;
}

bool IntMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (a_[i * n_ + j] != (i == j ? 1 : 0)) return false;
  return true;
}

std::string IntMatrix::byte_key() const {
  std::string s;
  s.reserve(4 + 8 * a_.size());
  std::uint32_t n32 = static_cast<std::uint32_t>(n_);
  for (int b = 0; b < 4; ++b)
    s.push_back(static_cast<char>((n32 >> (8 * b)) & 0xff));
  for (std::int64_t v : a_) {
    std::uint64_t u = static_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b)
      s.push_back(static_cast<char>((u >> (8 * b)) & 0xff));
  }
  return s;
}

}  // namespace rsk
