#include "rsk/matrix_group.hpp"

#include <algorithm>
#include <deque>

#include "rsk/errors.hpp"

namespace rsk {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace

FiniteMatrixGroup FiniteMatrixGroup::from_elements(
    std::vector<IntMatrix> elements) {
  if (elements.empty())
    throw InvalidParameterError("matrix group element list is empty");
  FiniteMatrixGroup g;
  g.dim_ = elements[0].dim();
  g.elems_ = std::move(elements);
  std::unordered_map<std::string, std::uint32_t> idx;
  for (std::size_t i = 0; i < g.elems_.size(); ++i) {
    const IntMatrix& m = g.elems_[i];
    if (m.dim() != g.dim_)
      throw InvalidParameterError("matrix group elements have mixed dimensions");
    if (!m.unimodular())
      throw InvalidParameterError(
          "matrix group element is not invertible over the integers");
    if (!idx.emplace(m.byte_key(), static_cast<std::uint32_t>(i)).second)
      throw InvalidParameterError("matrix group element list has duplicates");
  }
  // closure check; a finite set closed under products that contains the
  // identity is a group
  for (std::size_t i = 0; i < g.elems_.size(); ++i)
    for (std::size_t j = 0; j < g.elems_.size(); ++j)
      if (!idx.count((g.elems_[i] * g.elems_[j]).byte_key()))
        throw InvalidParameterError(
            "matrix group element list is not closed under products");
  g.index_ = std::move(idx);
  g.finish();
  return g;
}

FiniteMatrixGroup FiniteMatrixGroup::closure(
    std::span<const IntMatrix> generators, std::size_t cap) {
  if (generators.empty())
    throw InvalidParameterError("matrix group closure needs a generator");
  std::size_t dim = generators[0].dim();
  for (const IntMatrix& m : generators) {
    if (m.dim() != dim)
      throw InvalidParameterError("matrix group generators have mixed dimensions");
    if (!m.unimodular())
      throw InvalidParameterError(
          "matrix group generator is not invertible over the integers");
  }

  std::unordered_map<std::string, std::size_t> seen;
  std::vector<IntMatrix> elems;
  std::deque<std::size_t> todo;
  auto add = [&](IntMatrix m) -> bool {
    std::string k = m.byte_key();
    if (seen.count(k)) return false;
    if (elems.size() >= cap)
      throw ResourceLimitError("matrix group closure exceeded cap of " +
                               std::to_string(cap) + " elements");
    seen.emplace(std::move(k), elems.size());
    todo.push_back(elems.size());
    elems.push_back(std::move(m));
    return true;
  };
  add(IntMatrix::identity(dim));
  for (const IntMatrix& m : generators) add(m);
  while (!todo.empty()) {
    std::size_t cur = todo.front();
    todo.pop_front();
    for (const IntMatrix& m : generators) {
      add(elems[cur] * m);
      add(m * elems[cur]);
    }
  }

  // canonical order: identity first, the rest sorted by byte key
  std::sort(elems.begin(), elems.end(), [](const IntMatrix& a, const IntMatrix& b) {
    bool ia = a.is_identity(), ib = b.is_identity();
    if (ia != ib) return ia;
    return a.byte_key() < b.byte_key();
  });

  FiniteMatrixGroup g;
  g.dim_ = dim;
  g.elems_ = std::move(elems);
  for (std::size_t i = 0; i < g.elems_.size(); ++i)
    g.index_.emplace(g.elems_[i].byte_key(), static_cast<std::uint32_t>(i));
  g.finish();
  return g;
}

void FiniteMatrixGroup::finish() {
  identity_ = elems_.size();
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (elems_[i].is_identity()) {
      identity_ = i;
      break;
    }
  if (identity_ == elems_.size())
    throw InvalidParameterError("matrix group does not contain the identity");

  std::size_t k = elems_.size();
  if (k <= kTableLimit) {
    mul_.assign(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        auto it = index_.find((elems_[i] * elems_[j]).byte_key());
        if (it == index_.end())
          throw InvalidParameterError(
              "matrix group element list is not closed under products");
        mul_[i * k + j] = it->second;
      }
  }
  inv_.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    auto it = index_.find(elems_[i].inverse().byte_key());
    if (it == index_.end())
      throw InvalidParameterError("matrix group element has no listed inverse");
    inv_[i] = it->second;
  }

  std::string all;
  for (const IntMatrix& m : elems_) all += m.byte_key();
  fingerprint_ = hex64(fnv1a(all));
}

std::size_t FiniteMatrixGroup::mul(std::size_t i, std::size_t j) const {
  std::size_t k = elems_.size();
  if (i >= k || j >= k)
    throw InvalidParameterError("matrix group index out of range");
  if (!mul_.empty()) return mul_[i * k + j];
  auto it = index_.find((elems_[i] * elems_[j]).byte_key());
  if (it == index_.end())
    throw InternalConsistencyError("matrix group product left the element list");
  return it->second;
}

std::optional<std::size_t> FiniteMatrixGroup::find(const IntMatrix& m) const {
  auto it = index_.find(m.byte_key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace rsk
