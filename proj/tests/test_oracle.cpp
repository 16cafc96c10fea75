#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rsk/oracle.hpp"
#include "rsk/reduction.hpp"
#include "test_util.hpp"

using namespace rsk;
using testutil::naive_products;
using testutil::z2_point;

TEST_CASE("reachable_set basics") {
  GroupSpecPtr z2 = free_abelian(2);
  std::vector<Element> gens{z2_point(z2, 1, 0), z2_point(z2, 0, 1)};
  SearchConfig cfg;
  cfg.max_len = 3;
  auto reach = reachable_set(z2, gens, cfg);
  CHECK(reach.size() == 10);  // lattice points with x, y >= 0 and x + y <= 3
  for (const auto& [key, entry] : reach) {
    const auto& v = entry.element.as<std::vector<std::int64_t>>();
    CHECK(v[0] >= 0);
    CHECK(v[1] >= 0);
    CHECK(v[0] + v[1] <= 3);
    CHECK(entry.length == static_cast<std::size_t>(v[0] + v[1]));
  }

  SUBCASE("no generators reach only the identity") {
    cfg.max_len = 5;
    auto only_id = reachable_set(z2, {}, cfg);
    CHECK(only_id.size() == 1);
    CHECK(only_id.count(canonical_key(identity(z2))));
  }

  SUBCASE("free monoid counts") {
    GroupSpecPtr f2 = free_group(2);
    std::vector<Element> fg{free_word_element(f2, {1}),
                            free_word_element(f2, {2})};
    cfg.max_len = 2;
    CHECK(reachable_set(f2, fg, cfg).size() == 7);  // e, a, b, aa, ab, ba, bb
  }
}

TEST_CASE("reachable_set equals naive enumeration") {
  GroupSpecPtr z2 = free_abelian(2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<std::int64_t> entry(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Element> gens;
    int k = count(rng);
    for (int i = 0; i < k; ++i)
      gens.push_back(z2_point(z2, entry(rng), entry(rng)));
    SearchConfig cfg;
    cfg.max_len = 6;
    auto reach = reachable_set(z2, gens, cfg);
    auto naive = naive_products(z2, gens, 6);
    REQUIRE(reach.size() == naive.size());
    for (const auto& [key, entry_] : reach) {
      auto it = naive.find(key);
      REQUIRE(it != naive.end());
      CHECK(entry_.length == it->second.length);
      // deterministic witnesses are the lexicographically least minimal words
      CHECK(entry_.witness.letters == it->second.letters);
      CHECK(evaluate_word(z2, gens, entry_.witness) == entry_.element);
    }
  }
}

TEST_CASE("monotonicity in the bound") {
  GroupSpecPtr z2 = free_abelian(2);
  std::vector<Element> gens{z2_point(z2, 1, -1), z2_point(z2, -2, 1),
                            z2_point(z2, 0, 1)};
  SearchConfig cfg;
  for (std::size_t len = 0; len < 6; ++len) {
    cfg.max_len = len;
    auto small = reachable_set(z2, gens, cfg);
    cfg.max_len = len + 1;
    auto big = reachable_set(z2, gens, cfg);
    for (const auto& [key, entry] : small) CHECK(big.count(key) == 1);
  }
}

TEST_CASE("submonoid_member_bounded") {
  GroupSpecPtr z = free_abelian(1);
  std::vector<Element> two{vector_element(z, {2})};
  SearchConfig cfg;
  cfg.max_len = 10;
  CHECK_FALSE(
      submonoid_member_bounded(z, two, vector_element(z, {3}), cfg).found());

  GroupSpecPtr z2 = free_abelian(2);
  std::vector<Element> gens{z2_point(z2, 1, 0), z2_point(z2, 0, 1)};
  cfg.max_len = 3;
  SearchResult r =
      submonoid_member_bounded(z2, gens, z2_point(z2, 2, 1), cfg);
  CHECK(r.found());
  CHECK(r.witness_length == 3);
  CHECK(evaluate_word(z2, gens, *r.witness) == z2_point(z2, 2, 1));

  CHECK_THROWS_AS(
      submonoid_member_bounded(z2, gens, identity(free_abelian(3)), cfg),
      SpecMismatchError);
}

TEST_CASE("membership through a pair bundle") {
  GroupSpecPtr z = free_abelian(1);
  std::vector<Element> a0{vector_element(z, {2})};
  std::vector<Element> b0{vector_element(z, {3})};
  ReductionBundle bundle = reduce_pair(z, a0, b0);
  SearchConfig cfg;
  cfg.max_len = 7;
  Element five = with_g_part(bundle, vector_element(z, {5}));
  SearchResult r = bundle_member(bundle, five, cfg);
  CHECK(r.found());
  CHECK(r.witness_length == 3);

  cfg.max_len = 12;
  Element one = with_g_part(bundle, vector_element(z, {1}));
  CHECK_FALSE(bundle_member(bundle, one, cfg).found());
}

TEST_CASE("section_bounded") {
  GroupSpecPtr z = free_abelian(1);

  SUBCASE("loop automaton section") {
    std::vector<Transition> ts;
    ts.emplace_back(0, 0, vector_element(z, {1}));
    Automaton aut(z, 1, 0, {0}, std::move(ts));
    ReductionBundle bundle = mon_to_rat(aut);
    SearchConfig cfg;
    cfg.max_len = 9;
    auto section = bundle_section(bundle, cfg);
    // witness lengths 3, 5, 7, 9 reach labels 0, 1, 2, 3
    CHECK(section.size() == 4);
    for (std::int64_t v = 0; v <= 3; ++v) {
      auto it = section.find(canonical_key(vector_element(z, {v})));
      REQUIRE(it != section.end());
      CHECK(it->second.length == static_cast<std::size_t>(2 * (v + 1) + 1));
    }
  }

  SUBCASE("no generators, identity target") {
    GroupSpecPtr prod = direct_product({z, free_abelian(2)});
    SearchConfig cfg;
    cfg.max_len = 4;
    auto section = section_bounded(prod, {}, 1, identity(prod), cfg);
    CHECK(section.size() == 1);
    CHECK(section.count(canonical_key(identity(z))));
  }

  SUBCASE("empty subset stays empty at every bound") {
    Automaton aut(z, 2, 0, {}, {});  // no accepting states
    ReductionBundle bundle = mon_to_rat(aut);
    SearchConfig cfg;
    for (std::size_t len : {3, 6, 9}) {
      cfg.max_len = len;
      CHECK(bundle_section(bundle, cfg).empty());
    }
  }

  SUBCASE("selector validation") {
    SearchConfig cfg;
    CHECK_THROWS_AS(section_bounded(z, {}, 1, identity(z), cfg),
                    InvalidParameterError);
    GroupSpecPtr prod = direct_product({z, z});
    CHECK_THROWS_AS(section_bounded(prod, {}, 2, identity(prod), cfg),
                    InvalidParameterError);
  }
}

TEST_CASE("resource cap raises a distinct error with statistics") {
  GroupSpecPtr z2 = free_abelian(2);
  std::vector<Element> gens{z2_point(z2, 1, 0), z2_point(z2, 0, 1)};
  SearchConfig cfg;
  cfg.max_len = 20;
  cfg.max_elements = 10;
  try {
    reachable_set(z2, gens, cfg);
    FAIL("expected a resource error");
  } catch (const ResourceLimitError& e) {
    CHECK(e.stats().elements_visited == 10);
    CHECK(std::string(e.what()).find("10") != std::string::npos);
  }
  // a fully explored bound is not a resource error
  cfg.max_len = 2;
  cfg.max_elements = 1000;
  CHECK_FALSE(
      submonoid_member_bounded(z2, gens, z2_point(z2, -1, 0), cfg).found());
}

TEST_CASE("staged search realizes ordered products") {
  GroupSpecPtr z = free_abelian(1);
  // <(-1)>* <(+1)>* as an ordered product: -a + b for a, b >= 0
  std::vector<Element> gens{vector_element(z, {-1}), vector_element(z, {1})};
  std::vector<int> stages{0, 1};
  SearchConfig cfg;
  cfg.max_len = 4;
  auto reach = reachable_set(z, gens, cfg, stages);
  // every value in [-4, 4] is a staged product of length <= 4
  for (std::int64_t v = -4; v <= 4; ++v)
    CHECK(reach.count(canonical_key(vector_element(z, {v}))) == 1);
  // the minimal staged witness for 0 of positive length is (-1)(+1); check
  // the lexicographically least is the empty word
  auto it = reach.find(canonical_key(identity(z)));
  REQUIRE(it != reach.end());
  CHECK(it->second.length == 0);

  // stage-violating words are not explored: with reversed stages the value
  // -1 +1 ... patterns vanish unless ordered correctly
  std::vector<Element> updown{vector_element(z, {1}), vector_element(z, {-1})};
  auto strict = reachable_set(z, updown, cfg, stages);
  CHECK(strict.count(canonical_key(vector_element(z, {2}))));
  CHECK(strict.count(canonical_key(vector_element(z, {-2}))));
}

TEST_CASE("pruned searches agree with unpruned ones") {
  GroupSpecPtr z = free_abelian(1);
  std::vector<Transition> ts;
  ts.emplace_back(0, 0, vector_element(z, {1}));
  ts.emplace_back(0, 1, vector_element(z, {-2}));
  ts.emplace_back(1, 0, vector_element(z, {3}));
  Automaton aut(z, 2, 0, {1}, std::move(ts));
  ReductionBundle bundle = mon_to_rat(aut);
  SearchConfig cfg;
  cfg.max_len = 9;
  // bundle_section prunes on the trailing marker factor; compare against the
  // raw unpruned section
  auto pruned = bundle_section(bundle, cfg);
  auto plain = section_bounded(bundle.ambient, bundle.generator_elements(),
                               bundle.g_factors, bundle.target, cfg,
                               bundle.generator_stages());
  REQUIRE(pruned.size() == plain.size());
  for (const auto& [key, entry] : plain) {
    auto it = pruned.find(key);
    REQUIRE(it != pruned.end());
    CHECK(it->second.length == entry.length);
    CHECK(it->second.witness == entry.witness);
  }
}
