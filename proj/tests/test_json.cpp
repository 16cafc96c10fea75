#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rsk/json_io.hpp"
#include "rsk/verify.hpp"
#include "test_util.hpp"

using namespace rsk;
using testutil::random_element;

TEST_CASE("group spec round trips") {
  std::vector<GroupSpecPtr> specs{
      free_abelian(3),
      free_group(2),
      wreath(4),
      build_prop3_group().spec,
      build_cyclic_shift_group(3).spec,
      semidirect_cyclic_top(2, IntMatrix(2, {0, -1, 1, 0}), 4),
      direct_product({free_abelian(1), wreath(2), build_prop3_group().spec}),
  };
  {
    auto a = std::make_shared<const FiniteMatrixGroup>(
        signed_permutation_group(2));
    specs.push_back(semidirect_finite_top(a));
  }
  for (const auto& spec : specs) {
    INFO("spec: ", spec->describe());
    Json j = spec_to_json(*spec);
    GroupSpecPtr back = spec_from_json(j);
    CHECK(back->fingerprint() == spec->fingerprint());
    CHECK(spec_to_json(*back) == j);
  }
}

TEST_CASE("element round trips") {
  std::mt19937_64 rng(17);
  std::vector<GroupSpecPtr> specs{
      free_abelian(2), free_group(2), wreath(3), build_prop3_group().spec,
      direct_product({free_abelian(1), wreath(2)})};
  for (const auto& spec : specs) {
    for (int i = 0; i < 50; ++i) {
      Element e = random_element(rng, spec);
      Element back = element_from_json(element_to_json(e), spec);
      CHECK(back == e);
      CHECK(canonical_key(back) == canonical_key(e));
    }
  }
}

TEST_CASE("automaton round trips") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    Automaton aut = random_automaton(rng, 4, 6);
    Json j = automaton_to_json(aut);
    Automaton back = automaton_from_json(j);
    CHECK(back.state_count() == aut.state_count());
    CHECK(back.initial() == aut.initial());
    CHECK(back.accepting() == aut.accepting());
    REQUIRE(back.transitions().size() == aut.transitions().size());
    for (std::size_t t = 0; t < aut.transitions().size(); ++t) {
      CHECK(back.transitions()[t].from == aut.transitions()[t].from);
      CHECK(back.transitions()[t].to == aut.transitions()[t].to);
      CHECK(back.transitions()[t].label == aut.transitions()[t].label);
    }
    CHECK(automaton_to_json(back) == j);
    CHECK(automaton_hash(back) == automaton_hash(aut));
  }
}

TEST_CASE("labels serialize as generator words") {
  GroupSpecPtr z2 = free_abelian(2);
  std::vector<Element> gens{vector_element(z2, {1, 0}),
                            vector_element(z2, {0, 1})};
  std::vector<Transition> ts;
  // label is a word over the declared generators: g1 g2^{-1}
  ts.emplace_back(0, 1,
                  evaluate_word(z2, gens, GeneratorWord({1, -2}, false)),
                  std::vector<std::int32_t>{1, -2});
  Automaton aut(z2, 2, 0, {1}, std::move(ts), gens);
  Json j = automaton_to_json(aut);
  CHECK(j["transitions"][0]["label"] == Json::array({1, -2}));
  Automaton back = automaton_from_json(j);
  CHECK(back.transitions()[0].label == vector_element(z2, {1, -1}));
}

TEST_CASE("bundle round trips preserve queries and witness translation") {
  std::mt19937_64 rng(29);
  FiniteMatrixGroup a = signed_permutation_group(2);
  TrivialStabVector v = find_trivial_stabilizer_vector(a);
  for (int i = 0; i < 6; ++i) {
    Automaton aut = random_automaton(rng, 3, 5);
    for (int variant = 0; variant < 3; ++variant) {
      ReductionBundle bundle = variant == 0   ? mon_to_rat(aut)
                               : variant == 1 ? make_pair_to_rat_bundle(aut)
                                              : tighter_aut(aut, a, v);
      Json j = bundle_to_json(bundle);
      ReductionBundle back = bundle_from_json(j);
      CHECK(back.ambient->fingerprint() == bundle.ambient->fingerprint());
      CHECK(back.target == bundle.target);
      CHECK(back.variant == bundle.variant);
      CHECK(back.source_hash == bundle.source_hash);
      REQUIRE(back.generators.size() == bundle.generators.size());
      for (std::size_t g = 0; g < bundle.generators.size(); ++g) {
        CHECK(back.generators[g].element == bundle.generators[g].element);
        CHECK(back.generators[g].origin == bundle.generators[g].origin);
        CHECK(back.generators[g].transition == bundle.generators[g].transition);
        CHECK(back.generators[g].stage == bundle.generators[g].stage);
      }
      CHECK(bundle_to_json(back) == j);

      SearchConfig cfg;
      cfg.max_len = 7;
      auto section_a = bundle_section(bundle, cfg);
      auto section_b = bundle_section(back, cfg);
      REQUIRE(section_a.size() == section_b.size());
      for (const auto& [key, entry] : section_a) {
        auto it = section_b.find(key);
        REQUIRE(it != section_b.end());
        CHECK(it->second.length == entry.length);
        CHECK(it->second.witness == entry.witness);
        PathWitness pa = witness_to_path(bundle, entry.witness);
        PathWitness pb = witness_to_path(back, it->second.witness);
        CHECK(pa == pb);
      }
    }
  }
}

TEST_CASE("pair bundles round trip without an automaton") {
  GroupSpecPtr z = free_abelian(1);
  std::vector<Element> a0{vector_element(z, {2})};
  std::vector<Element> b0{vector_element(z, {3})};
  ReductionBundle bundle = reduce_pair(z, a0, b0);
  ReductionBundle back = bundle_from_json(bundle_to_json(bundle));
  CHECK(back.variant == BundleVariant::ReducePair);
  CHECK_FALSE(back.normalized.has_value());
  REQUIRE(back.generators.size() == bundle.generators.size());
  SearchConfig cfg;
  cfg.max_len = 7;
  auto a = bundle_section(bundle, cfg);
  auto b = bundle_section(back, cfg);
  REQUIRE(a.size() == b.size());
  for (const auto& [key, entry] : a) {
    REQUIRE(b.count(key) == 1);
    CHECK(b.at(key).witness == entry.witness);
  }
}

TEST_CASE("schema violations carry the offending field") {
  auto message_of = [](auto fn) -> std::string {
    try {
      fn();
    } catch (const SchemaError& e) {
      return e.what();
    }
    return "";
  };

  std::string m = message_of([] { spec_from_json(Json{{"type", "nope"}}); });
  CHECK(m.find("group.type") != std::string::npos);

  m = message_of([] {
    spec_from_json(Json{{"type", "free_abelian"}, {"rank", "x"}});
  });
  CHECK(m.find("group.rank") != std::string::npos);

  m = message_of([] {
    automaton_from_json(Json{{"group", Json{{"type", "free_abelian"}, {"rank", 1}}},
                             {"generators", Json::array()},
                             {"states", 1},
                             {"initial", 0},
                             {"accepting", Json::array()},
                             {"transitions",
                              Json::array({Json{{"from", 0},
                                                {"label", Json::array({3})},
                                                {"to", 0}}})}});
  });
  CHECK(m.find("transitions[0].label") != std::string::npos);

  m = message_of([] { element_from_json(Json::array({1, 2, 3}), free_abelian(2)); });
  CHECK(!m.empty());

  CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), SchemaError);
}
