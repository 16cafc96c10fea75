#include "rsk/verify.hpp"

#include <chrono>
#include <functional>
#include <set>

#include "rsk/checked.hpp"

namespace rsk {

void SuiteReport::fail(std::string what) {
  pass = false;
  if (counterexamples.size() < 20) counterexamples.push_back(std::move(what));
}

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// Depth-first enumeration of all words up to max_len over `letters`,
// maintaining the running product; visit(word, value) is called for every
// word including the empty one.
void sweep_words(
    const std::vector<Element>& letters, const Element& id, std::size_t max_len,
    const std::function<void(const std::vector<std::uint32_t>&, const Element&)>&
        visit) {
  std::vector<std::uint32_t> word;
  std::vector<Element> stack{id};
  std::function<void()> rec = [&] {
    visit(word, stack.back());
    if (word.size() >= max_len) return;
    for (std::uint32_t l = 0; l < letters.size(); ++l) {
      word.push_back(l);
      stack.push_back(multiply(stack.back(), letters[l]));
      rec();
      stack.pop_back();
      word.pop_back();
    }
  };
  rec();
}

std::string word_string(const std::vector<std::uint32_t>& word,
                        const std::vector<std::string>& names) {
  std::string s;
  for (std::uint32_t l : word) {
    if (!s.empty()) s += ' ';
    s += names[l];
  }
  return s.empty() ? "<empty>" : s;
}

SuiteReport xsy_sweep(std::string suite, const MarkedGroup& h,
                      std::size_t max_len) {
  Timer timer;
  SuiteReport r;
  r.suite = std::move(suite);
  std::vector<Element> letters{h.x, h.s, h.y};
  std::vector<std::string> names{"x", "s", "y"};
  std::string s_key = canonical_key(h.s);
  sweep_words(letters, identity(h.spec), max_len,
              [&](const std::vector<std::uint32_t>& word, const Element& val) {
                if (word.empty()) return;  // counted over nonempty words
                ++r.checked;
                bool is_s = canonical_key(val) == s_key;
                std::optional<std::size_t> shape = check_xsy_shape(word);
                if (is_s != shape.has_value())
                  r.fail("word " + word_string(word, names) +
                         (is_s ? " has value s but fails the shape check"
                               : " passes the shape check but is not s"));
                if (is_s) ++r.matched;
              });
  r.seconds = timer.seconds();
  return r;
}

}  // namespace

SuiteReport verify_prop3(std::size_t max_len) {
  SuiteReport r = xsy_sweep("prop3", build_prop3_group(), max_len);
  r.notes.push_back("rotation marker group, words of length 1.." +
                    std::to_string(max_len));
  return r;
}

SuiteReport verify_prop3_shift(std::size_t n, std::size_t max_len) {
  SuiteReport r = xsy_sweep("prop3-shift(n=" + std::to_string(n) + ")",
                            build_cyclic_shift_group(n), max_len);
  r.notes.push_back("cyclic shift marker group");
  return r;
}

SuiteReport verify_prop5(std::size_t n, std::size_t max_len) {
  Timer timer;
  SuiteReport r;
  r.suite = "prop5(n=" + std::to_string(n) + ")";
  GroupSpecPtr h = wreath(n);
  std::vector<Element> letters;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      letters.push_back(wreath_edge_letter(h, i, j));
      pairs.emplace_back(i, j);
      names.push_back("t" + std::to_string(i) + std::to_string(j));
    }

  sweep_words(letters, identity(h), max_len,
              [&](const std::vector<std::uint32_t>& word, const Element& val) {
                ++r.checked;
                const auto& p = val.as<WreathPayload>();
                // e_0^l s for some l >= 1
                bool is_target = p.shift == 1 && p.coords[0] >= 1;
                for (std::size_t i = 1; is_target && i < n; ++i)
                  if (p.coords[i] != 0) is_target = false;
                std::vector<std::pair<std::uint32_t, std::uint32_t>> w;
                for (std::uint32_t l : word) w.push_back(pairs[l]);
                auto shape = check_path_shape(n, w);
                if (is_target != shape.has_value())
                  r.fail("word " + word_string(word, names) +
                         (is_target ? " has value e_0^l s but is not a 0->1 path"
                                    : " is a 0->1 path but lacks value e_0^l s"));
                else if (is_target &&
                         p.coords[0] != static_cast<std::int64_t>(word.size()))
                  r.fail("word " + word_string(word, names) +
                         " has value e_0^l s with l != |w|");
                if (is_target) ++r.matched;
              });
  r.seconds = timer.seconds();
  return r;
}

SuiteReport verify_prop8(std::size_t max_len) {
  Timer timer;
  SuiteReport r;
  r.suite = "prop8";
  FiniteMatrixGroup a = signed_permutation_group(2);
  TrivialStabVector v = find_trivial_stabilizer_vector(a);
  auto a_shared = std::make_shared<const FiniteMatrixGroup>(a);
  GroupSpecPtr lattice = semidirect_finite_top(a_shared);

  std::vector<Element> letters;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < a.size(); ++i)
    for (std::uint32_t j = 0; j < a.size(); ++j) {
      std::size_t i_inv = a.inverse(i);
      letters.push_back(semidirect_element(
          lattice, a.matrix(i_inv).apply(v.v),
          static_cast<std::int64_t>(a.mul(i_inv, j))));
      pairs.emplace_back(i, j);
      names.push_back("t[" + std::to_string(i) + "," + std::to_string(j) + "]");
    }

  sweep_words(letters, identity(lattice), max_len,
              [&](const std::vector<std::uint32_t>& word, const Element& val) {
                ++r.checked;
                const auto& p = val.as<SemidirectPayload>();
                // v^l a for some a, with l = |word|
                bool is_target = true;
                for (std::size_t i = 0; i < v.v.size(); ++i)
                  if (p.vec[i] !=
                      v.v[i] * static_cast<std::int64_t>(word.size()))
                    is_target = false;
                std::vector<std::pair<std::uint32_t, std::uint32_t>> w;
                for (std::uint32_t l : word) w.push_back(pairs[l]);
                auto chain = check_vla_shape(a, v.v, w);
                if (is_target != chain.has_value()) {
                  r.fail("word " + word_string(word, names) +
                         (is_target ? " has value v^l a but does not chain"
                                    : " chains but lacks value v^l a"));
                } else if (chain &&
                           chain->back() != static_cast<std::uint32_t>(p.top)) {
                  r.fail("word " + word_string(word, names) +
                         " chains to the wrong endpoint");
                }
                if (is_target) ++r.matched;
              });
  r.notes.push_back("A = signed permutations n=2, v = (" +
                    std::to_string(v.v[0]) + "," + std::to_string(v.v[1]) + ")");
  r.seconds = timer.seconds();
  return r;
}

SuiteReport verify_gram() {
  Timer timer;
  SuiteReport r;
  r.suite = "gram";
  struct Case {
    std::string name;
    FiniteMatrixGroup group;
  };
  std::vector<IntMatrix> order3{IntMatrix(2, {0, -1, 1, -1})};
  std::vector<IntMatrix> rot4{IntMatrix(2, {0, -1, 1, 0})};
  std::vector<Case> cases;
  cases.push_back({"signed-perm-2", signed_permutation_group(2)});
  cases.push_back({"signed-perm-3", signed_permutation_group(3)});
  cases.push_back({"order-3", FiniteMatrixGroup::closure(order3)});
  cases.push_back({"rotation-4", FiniteMatrixGroup::closure(rot4)});

  for (const Case& c : cases) {
    const FiniteMatrixGroup& a = c.group;
    IntMatrix g = invariant_inner_product(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
      ++r.checked;
      const IntMatrix& m = a.matrix(i);
      if (!(m.transpose() * g * m == g))
        r.fail(c.name + ": form is not invariant under element " +
               std::to_string(i));
    }
    if (!g.positive_definite())
      r.fail(c.name + ": form is not positive definite");
    TrivialStabVector v = find_trivial_stabilizer_vector(a);
    // strict Cauchy-Schwarz: <v, av> < <v, v> for a != identity
    auto form = [&](std::span<const std::int64_t> x,
                    std::span<const std::int64_t> y) {
      std::vector<std::int64_t> gy = g.apply(y);
      __int128 acc = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        acc += static_cast<__int128>(x[i]) * gy[i];
      return acc;
    };
    __int128 vv = form(v.v, v.v);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == a.identity_index()) continue;
      ++r.checked;
      std::vector<std::int64_t> av = a.matrix(i).apply(v.v);
      if (!(form(v.v, av) < vv))
        r.fail(c.name + ": <v, av> is not strictly below <v, v> for element " +
               std::to_string(i));
    }
    std::string gram;
    for (std::int64_t x : g.data()) gram += std::to_string(x) + " ";
    r.notes.push_back(c.name + ": |A| = " + std::to_string(a.size()) +
                      ", gram = [" + gram + "]");
  }
  r.seconds = timer.seconds();
  return r;
}

Automaton random_automaton(std::mt19937_64& rng, std::size_t max_states,
                           std::size_t max_transitions) {
  GroupSpecPtr z2 = free_abelian(2);
  std::uniform_int_distribution<std::size_t> state_count(1, max_states);
  std::size_t n = state_count(rng);
  std::uniform_int_distribution<std::size_t> state(0, n - 1);
  std::uniform_int_distribution<std::int64_t> entry(-2, 2);
  std::uniform_int_distribution<std::size_t> tcount(0, max_transitions);
  std::uniform_int_distribution<int> coin(0, 1);

  std::vector<std::size_t> accepting;
  for (std::size_t s = 0; s < n; ++s)
    if (coin(rng)) accepting.push_back(s);

  std::set<std::string> seen;
  std::vector<Transition> transitions;
  std::size_t m = tcount(rng);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t from = state(rng), to = state(rng);
    Element label = vector_element(z2, {entry(rng), entry(rng)});
    std::string key = std::to_string(from) + "/" + std::to_string(to) + "/" +
                      canonical_key(label);
    if (!seen.insert(std::move(key)).second) continue;
    transitions.emplace_back(from, to, std::move(label));
  }
  return Automaton(z2, n, 0, std::move(accepting), std::move(transitions));
}

namespace {

SuiteReport e2e_suite(std::string suite, std::uint64_t seed, std::size_t count,
                      std::size_t max_states, std::size_t max_transitions,
                      bool tighter) {
  Timer timer;
  SuiteReport r;
  r.suite = std::move(suite);
  FiniteMatrixGroup a = signed_permutation_group(2);
  TrivialStabVector v = find_trivial_stabilizer_vector(a);

  for (std::size_t i = 0; i < count && r.pass; ++i) {
    std::mt19937_64 rng(seed * 1000003 + i);
    Automaton aut = random_automaton(rng, max_states, max_transitions);
    ReductionBundle bundle =
        tighter ? tighter_aut(aut, a, v) : mon_to_rat(aut);
    const Automaton& norm = *bundle.normalized;
    std::string tag = "automaton " + std::to_string(i);

    auto labels = enumerate_path_labels(norm, EnumerateConfig{4, 1'000'000});
    SearchConfig cfg;
    cfg.max_len = 9;
    cfg.max_elements = 4'000'000;
    auto section = bundle_section(bundle, cfg);

    // every enumerated label appears at witness length exactly 2l + 1
    for (const auto& [key, pl] : labels) {
      ++r.checked;
      auto it = section.find(key);
      if (it == section.end()) {
        r.fail(tag + ": label with path length " + std::to_string(pl.length) +
               " missing from the bundle section at bound 9");
        continue;
      }
      if (it->second.length != 2 * pl.length + 1)
        r.fail(tag + ": witness length " + std::to_string(it->second.length) +
               " differs from 2l+1 = " + std::to_string(2 * pl.length + 1));
      ++r.matched;
    }

    // every section element translates back to a valid accepting path with
    // the same label
    for (const auto& [key, entry] : section) {
      ++r.checked;
      try {
        PathWitness p = witness_to_path(bundle, entry.witness);
        if (!valid_path(norm, p)) {
          r.fail(tag + ": recovered path is not a valid accepting path");
          continue;
        }
        if (!(path_label(norm, p) == entry.g))
          r.fail(tag + ": recovered path label differs from the section element");
        if (p.size() != (entry.length - 1) / 2)
          r.fail(tag + ": recovered path length is inconsistent with the witness");
      } catch (const Error& e) {
        r.fail(tag + ": witness translation failed: " + e.what());
      }
    }

    // exercise the member query once per automaton
    if (!labels.empty()) {
      const auto& pl = labels.begin()->second;
      SearchConfig mc;
      mc.max_len = 2 * pl.length + 1;
      mc.max_elements = 4'000'000;
      SearchResult res = bundle_member(bundle, with_g_part(bundle, pl.label), mc);
      if (!res.found() || res.witness_length != 2 * pl.length + 1)
        r.fail(tag + ": member query missed a label at bound 2l+1");
      else {
        // the found witness must itself translate back
        try {
          witness_to_path(bundle, *res.witness);
        } catch (const Error& e) {
          r.fail(tag + std::string(": member witness translation failed: ") +
                 e.what());
        }
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

}  // namespace

SuiteReport verify_thm7_e2e(std::uint64_t seed, std::size_t count) {
  return e2e_suite("thm7-e2e", seed, count, 3, 8, false);
}

SuiteReport verify_thm9_e2e(std::uint64_t seed, std::size_t count) {
  return e2e_suite("thm9-e2e", seed, count, 7, 10, true);
}

}  // namespace rsk
