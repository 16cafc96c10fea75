#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rsk/group.hpp"
#include "rsk/oracle.hpp"

namespace rsk::testutil {

struct NaiveEntry {
  Element element;
  std::size_t length;
  std::vector<std::int32_t> letters;  // 1-based, lexicographically least
};

// Independent oracle: enumerate every generator sequence of length <= max_len
// in (length, lex) order and keep the first word producing each element.
inline std::map<std::string, NaiveEntry> naive_products(
    const GroupSpecPtr& spec, const std::vector<Element>& gens,
    std::size_t max_len) {
  std::map<std::string, NaiveEntry> out;
  Element id = identity(spec);
  out.emplace(canonical_key(id), NaiveEntry{id, 0, {}});
  std::vector<std::size_t> word;
  for (std::size_t len = 1; len <= max_len; ++len) {
    if (gens.empty()) break;
    word.assign(len, 0);
    while (true) {
      Element val = identity(spec);
      for (std::size_t i : word) val = multiply(val, gens[i]);
      std::string key = canonical_key(val);
      if (!out.count(key)) {
        std::vector<std::int32_t> letters;
        for (std::size_t i : word)
          letters.push_back(static_cast<std::int32_t>(i + 1));
        out.emplace(std::move(key), NaiveEntry{val, len, std::move(letters)});
      }
      std::size_t k = len;
      while (k > 0 && word[k - 1] == gens.size() - 1) word[--k] = 0;
      if (k == 0) break;
      ++word[k - 1];
    }
  }
  return out;
}

inline Element z2_point(const GroupSpecPtr& z2, std::int64_t x,
                        std::int64_t y) {
  return vector_element(z2, {x, y});
}

// uniformly random element for property tests
inline Element random_element(std::mt19937_64& rng, const GroupSpecPtr& spec) {
  std::uniform_int_distribution<std::int64_t> small(-10, 10);
  if (const auto* fa = spec->as<FreeAbelianSpec>()) {
    std::vector<std::int64_t> v(fa->rank);
    for (auto& x : v) x = small(rng);
    return vector_element(spec, std::move(v));
  }
  if (const auto* fg = spec->as<FreeGroupSpec>()) {
    std::uniform_int_distribution<std::size_t> len(0, 8);
    std::uniform_int_distribution<std::int32_t> gen(
        1, static_cast<std::int32_t>(fg->rank));
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<std::int32_t> letters;
    std::size_t n = len(rng);
    while (letters.size() < n) {
      std::int32_t l = gen(rng) * (sign(rng) ? 1 : -1);
      if (!letters.empty() && letters.back() == -l) continue;
      letters.push_back(l);
    }
    return free_word_element(spec, std::move(letters));
  }
  if (const auto* sd = spec->as<SemidirectLatticeSpec>()) {
    std::vector<std::int64_t> v(sd->rank);
    for (auto& x : v) x = small(rng);
    std::int64_t top = 0;
    switch (sd->top) {
      case TopKind::Integer: {
        std::uniform_int_distribution<std::int64_t> e(-6, 6);
        top = e(rng);
        break;
      }
      case TopKind::Cyclic: {
        std::uniform_int_distribution<std::int64_t> e(0, sd->top_order - 1);
        top = e(rng);
        break;
      }
      case TopKind::Finite: {
        std::uniform_int_distribution<std::int64_t> e(
            0, static_cast<std::int64_t>(sd->top_group->size()) - 1);
        top = e(rng);
        break;
      }
    }
    return semidirect_element(spec, std::move(v), top);
  }
  if (const auto* wr = spec->as<WreathSpec>()) {
    std::vector<std::int64_t> v(wr->copies);
    for (auto& x : v) x = small(rng);
    std::uniform_int_distribution<std::int64_t> sh(
        0, static_cast<std::int64_t>(wr->copies) - 1);
    return wreath_element(spec, std::move(v), sh(rng));
  }
  const auto& dp = *spec->as<DirectProductSpec>();
  std::vector<Element> parts;
  for (const auto& f : dp.factors) parts.push_back(random_element(rng, f));
  return product_element(spec, std::move(parts));
}

}  // namespace rsk::testutil
