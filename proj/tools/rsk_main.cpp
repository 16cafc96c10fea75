// rsk: build reductions from group-labelled automata to submonoid membership,
// run bounded membership/section queries, and drive the verification suites.
//
// Exit codes: 0 success / found / all checks pass, 1 not found within bound
// or a failed verification, 2 usage, schema or parameter errors, 3 resource
// caps.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rsk/json_io.hpp"
#include "rsk/verify.hpp"

namespace {

using rsk::Json;

std::size_t env_max_elements(std::size_t fallback) {
  const char* v = std::getenv("RSK_MAX_ELEMENTS");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  unsigned long long parsed = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0' || parsed == 0)
    throw rsk::InvalidParameterError(
        "RSK_MAX_ELEMENTS must be a positive integer");
  return static_cast<std::size_t>(parsed);
}

Json parse_inline_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw rsk::SchemaError("cannot parse " + what + ": " + e.what());
  }
}

rsk::ReductionBundle load_bundle(const std::string& path) {
  return rsk::bundle_from_json(rsk::load_json_file(path));
}

struct RawGenerators {
  rsk::GroupSpecPtr spec;
  std::vector<rsk::Element> gens;
};

RawGenerators load_raw_generators(const Json& j) {
  RawGenerators raw;
  if (!j.is_object() || !j.contains("group") || !j.contains("generators"))
    throw rsk::SchemaError(
        "generator file needs fields 'group' and 'generators'");
  raw.spec = rsk::spec_from_json(j["group"]);
  for (const Json& g : j["generators"])
    raw.gens.push_back(rsk::element_from_json(g, raw.spec));
  return raw;
}

int cmd_build(const std::string& automaton_path, const std::string& variant,
              bool pad_pow2, std::size_t signed_perm,
              const std::string& output) {
  rsk::Automaton aut =
      rsk::automaton_from_json(rsk::load_json_file(automaton_path));
  rsk::ReductionBundle bundle = [&] {
    if (variant == "pair") return rsk::make_pair_to_rat_bundle(aut, pad_pow2);
    if (variant == "mon2rat") return rsk::mon_to_rat(aut, pad_pow2);
    if (variant == "tighter") {
      rsk::FiniteMatrixGroup a = rsk::signed_permutation_group(signed_perm);
      rsk::TrivialStabVector v = rsk::find_trivial_stabilizer_vector(a);
      return rsk::tighter_aut(aut, a, v);
    }
    throw rsk::InvalidParameterError("unknown variant '" + variant + "'");
  }();

  Json bj = rsk::bundle_to_json(bundle);
  Json summary;
  summary["variant"] = rsk::variant_name(bundle.variant);
  summary["generator_count"] = bundle.generators.size();
  summary["ambient"] = bundle.ambient->describe();
  summary["target"] = rsk::element_to_json(bundle.target);
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out)
      throw rsk::InvalidParameterError("cannot write to '" + output + "'");
    out << bj.dump(2) << '\n';
    summary["bundle"] = output;
    std::cout << summary.dump(2) << std::endl;
  } else {
    std::cout << bj.dump(2) << std::endl;
    std::cerr << summary.dump(2) << std::endl;
  }
  return 0;
}

int cmd_member(const std::string& bundle_path, const std::string& gens_path,
               const std::string& target_text, std::size_t max_len) {
  rsk::SearchConfig cfg;
  cfg.max_len = max_len;
  cfg.max_elements = env_max_elements(cfg.max_elements);
  Json target_json = parse_inline_json(target_text, "target element");

  rsk::SearchResult res;
  if (!bundle_path.empty()) {
    rsk::ReductionBundle bundle = load_bundle(bundle_path);
    rsk::Element target =
        rsk::element_from_json(target_json, bundle.ambient);
    res = rsk::bundle_member(bundle, target, cfg);
  } else {
    RawGenerators raw =
        load_raw_generators(rsk::load_json_file(gens_path));
    rsk::Element target = rsk::element_from_json(target_json, raw.spec);
    res = rsk::submonoid_member_bounded(raw.spec, raw.gens, target, cfg);
  }

  Json out;
  out["verdict"] = res.found() ? "FOUND" : "NOT_FOUND_WITHIN_BOUND";
  out["max_len"] = max_len;
  if (res.witness) {
    out["witness"] = rsk::word_to_json(*res.witness);
    out["length"] = res.witness_length;
  }
  out["stats"] = rsk::stats_to_json(res.stats);
  std::cout << out.dump(2) << std::endl;
  return res.found() ? 0 : 1;
}

int cmd_section(const std::string& bundle_path, std::size_t max_len) {
  rsk::SearchConfig cfg;
  cfg.max_len = max_len;
  cfg.max_elements = env_max_elements(cfg.max_elements);
  rsk::ReductionBundle bundle = load_bundle(bundle_path);
  auto section = rsk::bundle_section(bundle, cfg);

  Json out;
  out["max_len"] = max_len;
  out["target"] = rsk::element_to_json(bundle.target);
  Json elems = Json::array();
  for (const auto& [key, entry] : section) {
    Json ej;
    ej["element"] = rsk::element_to_json(entry.g);
    ej["length"] = entry.length;
    ej["witness"] = rsk::word_to_json(entry.witness);
    elems.push_back(std::move(ej));
  }
  out["count"] = elems.size();
  out["elements"] = std::move(elems);
  std::cout << out.dump(2) << std::endl;
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               std::optional<std::size_t> max_len) {
  rsk::SuiteReport report;
  if (suite == "prop3")
    report = rsk::verify_prop3(max_len.value_or(9));
  else if (suite == "prop3-shift") {
    rsk::SuiteReport a = rsk::verify_prop3_shift(3, max_len.value_or(7));
    rsk::SuiteReport b = rsk::verify_prop3_shift(4, max_len.value_or(7));
    report = a;
    report.suite = "prop3-shift";
    report.pass = a.pass && b.pass;
    report.checked += b.checked;
    report.matched += b.matched;
    report.seconds += b.seconds;
    report.counterexamples.insert(report.counterexamples.end(),
                                  b.counterexamples.begin(),
                                  b.counterexamples.end());
  } else if (suite == "prop5")
    report = rsk::verify_prop5(3, max_len.value_or(5));
  else if (suite == "prop8")
    report = rsk::verify_prop8(max_len.value_or(3));
  else if (suite == "gram")
    report = rsk::verify_gram();
  else if (suite == "thm7-e2e")
    report = rsk::verify_thm7_e2e(seed);
  else if (suite == "thm9-e2e")
    report = rsk::verify_thm9_e2e(seed);
  else
    throw rsk::InvalidParameterError("unknown suite '" + suite + "'");

  Json out;
  out["suite"] = report.suite;
  out["pass"] = report.pass;
  out["checked"] = report.checked;
  out["matched"] = report.matched;
  out["seconds"] = report.seconds;
  out["counterexamples"] = report.counterexamples;
  out["notes"] = report.notes;
  std::cout << out.dump(2) << std::endl;
  return report.pass ? 0 : 1;
}

int cmd_oracle(const std::string& group_path, const std::string& gens_path,
               const std::string& target_text, std::size_t max_len) {
  rsk::GroupSpecPtr spec =
      rsk::spec_from_json(rsk::load_json_file(group_path));
  Json gj = rsk::load_json_file(gens_path);
  if (!gj.is_array())
    throw rsk::SchemaError("generator file must be a JSON array of elements");
  std::vector<rsk::Element> gens;
  for (const Json& g : gj) gens.push_back(rsk::element_from_json(g, spec));

  rsk::Element target =
      rsk::element_from_json(parse_inline_json(target_text, "target element"),
                             spec);
  rsk::SearchConfig cfg;
  cfg.max_len = max_len;
  cfg.max_elements = env_max_elements(cfg.max_elements);
  rsk::SearchResult res =
      rsk::submonoid_member_bounded(spec, gens, target, cfg);

  Json out;
  out["verdict"] = res.found() ? "FOUND" : "NOT_FOUND_WITHIN_BOUND";
  out["group"] = spec->describe();
  out["max_len"] = max_len;
  if (res.witness) {
    out["witness"] = rsk::word_to_json(*res.witness);
    out["length"] = res.witness_length;
  }
  out["stats"] = rsk::stats_to_json(res.stats);
  std::cout << out.dump(2) << std::endl;
  return res.found() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group-labelled automata, submonoid reductions and bounded membership oracles"};
  app.require_subcommand(1);

  std::string automaton_path, variant = "mon2rat", output;
  bool pad_pow2 = false;
  std::size_t signed_perm = 2;
  CLI::App* build = app.add_subcommand("build", "construct a reduction bundle from an automaton");
  build->add_option("--automaton", automaton_path, "automaton JSON file")->required();
  build->add_option("--variant", variant, "pair | mon2rat | tighter")
      ->check(CLI::IsMember({"pair", "mon2rat", "tighter"}));
  build->add_flag("--pad-pow2", pad_pow2, "round the wreath order up to a power of two");
  build->add_option("--signed-perm", signed_perm, "signed permutation dimension for tighter bundles");
  build->add_option("--output", output, "bundle output file (default: bundle JSON on stdout)");

  std::string bundle_path, gens_path, target_text;
  std::size_t max_len = 8;
  CLI::App* member = app.add_subcommand("member", "bounded submonoid membership query");
  member->add_option("--bundle", bundle_path, "bundle JSON file");
  member->add_option("--gens", gens_path, "raw generator file {group, generators}");
  member->add_option("--target", target_text, "target element JSON")->required();
  member->add_option("--max-len", max_len, "maximum word length")->required();

  std::string section_bundle;
  std::size_t section_len = 8;
  CLI::App* section = app.add_subcommand("section", "enumerate the bounded section of a bundle");
  section->add_option("--bundle", section_bundle, "bundle JSON file")->required();
  section->add_option("--max-len", section_len, "maximum word length")->required();

  std::string suite;
  std::uint64_t seed = 1;
  std::size_t verify_len = 0;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite,
                     "prop3 | prop3-shift | prop5 | prop8 | gram | thm7-e2e | thm9-e2e")
      ->required();
  verify->add_option("--seed", seed, "seed for randomized suites");
  verify->add_option("--max-len", verify_len, "sweep length override");

  std::string oracle_group, oracle_gens, oracle_target;
  std::size_t oracle_len = 8;
  CLI::App* oracle = app.add_subcommand("oracle", "raw submonoid membership query");
  oracle->add_option("--group", oracle_group, "group spec JSON file")->required();
  oracle->add_option("--gens", oracle_gens, "JSON array of generator elements")->required();
  oracle->add_option("--target", oracle_target, "target element JSON")->required();
  oracle->add_option("--max-len", oracle_len, "maximum word length")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed())
      return cmd_build(automaton_path, variant, pad_pow2, signed_perm, output);
    if (member->parsed()) {
      if (bundle_path.empty() == gens_path.empty())
        throw rsk::InvalidParameterError(
            "member needs exactly one of --bundle or --gens");
      return cmd_member(bundle_path, gens_path, target_text, max_len);
    }
    if (section->parsed()) return cmd_section(section_bundle, section_len);
    if (verify->parsed())
      return cmd_verify(suite, seed,
                        verify_len ? std::optional<std::size_t>(verify_len)
                                   : std::nullopt);
    if (oracle->parsed())
      return cmd_oracle(oracle_group, oracle_gens, oracle_target, oracle_len);
  } catch (const rsk::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << std::endl;
    return 3;
  } catch (const rsk::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 2;
}
