#include "rsk/json_io.hpp"

#include <fstream>

namespace rsk {

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object())
    throw SchemaError(where + ": expected an object");
  auto it = j.find(name);
  if (it == j.end())
    throw SchemaError(where + ": missing field '" + name + "'");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw SchemaError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

std::size_t as_size(const Json& j, const std::string& where) {
  std::int64_t v = as_int(j, where);
  if (v < 0) throw SchemaError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string as_str(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::int64_t> as_ivec(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<std::int64_t> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

IntMatrix matrix_from_json(const Json& j, std::size_t rank,
                           const std::string& where) {
  std::vector<std::int64_t> data = as_ivec(j, where);
  if (data.size() != rank * rank)
    throw SchemaError(where + ": expected " + std::to_string(rank * rank) +
                      " row-major entries, got " + std::to_string(data.size()));
  return IntMatrix(rank, std::move(data));
}

Json matrix_to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::int64_t v : m.data()) a.push_back(v);
  return a;
}

}  // namespace

Json spec_to_json(const GroupSpec& spec) {
  Json j;
  if (const auto* fa = spec.as<FreeAbelianSpec>()) {
    j["type"] = "free_abelian";
    j["rank"] = fa->rank;
  } else if (const auto* fg = spec.as<FreeGroupSpec>()) {
    j["type"] = "free_group";
    j["rank"] = fg->rank;
  } else if (const auto* sd = spec.as<SemidirectLatticeSpec>()) {
    j["type"] = "semidirect_lattice";
    j["rank"] = sd->rank;
    Json action = Json::array();
    if (sd->top == TopKind::Finite) {
      j["top"] = "finite";
      for (std::size_t i = 0; i < sd->top_group->size(); ++i)
        action.push_back(matrix_to_json(sd->top_group->matrix(i)));
    } else {
      j["top"] = sd->top == TopKind::Integer ? "integer" : "cyclic";
      if (sd->top_order != 0) j["order"] = sd->top_order;
      action.push_back(matrix_to_json(sd->action));
    }
    j["action"] = std::move(action);
  } else if (const auto* wr = spec.as<WreathSpec>()) {
    j["type"] = "wreath";
    j["copies"] = wr->copies;
  } else {
    const auto& dp = *spec.as<DirectProductSpec>();
    j["type"] = "direct_product";
    Json factors = Json::array();
    for (const auto& f : dp.factors) factors.push_back(spec_to_json(*f));
    j["factors"] = std::move(factors);
  }
  return j;
}

GroupSpecPtr spec_from_json(const Json& j) {
  std::string type = as_str(field(j, "type", "group"), "group.type");
  try {
    if (type == "free_abelian")
      return free_abelian(as_size(field(j, "rank", "group"), "group.rank"));
    if (type == "free_group")
      return free_group(as_size(field(j, "rank", "group"), "group.rank"));
    if (type == "wreath")
      return wreath(as_size(field(j, "copies", "group"), "group.copies"));
    if (type == "direct_product") {
      const Json& fs = field(j, "factors", "group");
      if (!fs.is_array()) throw SchemaError("group.factors: expected an array");
      std::vector<GroupSpecPtr> factors;
      for (const Json& f : fs) factors.push_back(spec_from_json(f));
      return direct_product(std::move(factors));
    }
    if (type == "semidirect_lattice") {
      std::size_t rank = as_size(field(j, "rank", "group"), "group.rank");
      std::string top = as_str(field(j, "top", "group"), "group.top");
      const Json& action = field(j, "action", "group");
      if (!action.is_array())
        throw SchemaError("group.action: expected an array of matrices");
      if (top == "finite") {
        std::vector<IntMatrix> elems;
        for (std::size_t i = 0; i < action.size(); ++i)
          elems.push_back(matrix_from_json(
              action[i], rank, "group.action[" + std::to_string(i) + "]"));
        return semidirect_finite_top(std::make_shared<const FiniteMatrixGroup>(
            FiniteMatrixGroup::from_elements(std::move(elems))));
      }
      if (action.size() != 1)
        throw SchemaError("group.action: expected exactly one matrix");
      IntMatrix m = matrix_from_json(action[0], rank, "group.action[0]");
      std::int64_t order =
          j.contains("order") ? as_int(j["order"], "group.order") : 0;
      if (top == "integer")
        return semidirect_integer_top(rank, std::move(m), order);
      if (top == "cyclic")
        return semidirect_cyclic_top(rank, std::move(m), order);
      throw SchemaError("group.top: unknown kind '" + top + "'");
    }
  } catch (const InvalidParameterError& e) {
    throw SchemaError(std::string("group: ") + e.what());
  }
  throw SchemaError("group.type: unknown type '" + type + "'");
}

Json element_to_json(const Element& e) {
  const GroupSpec& g = *e.spec();
  if (g.as<FreeAbelianSpec>()) {
    Json a = Json::array();
    for (std::int64_t v : e.as<std::vector<std::int64_t>>()) a.push_back(v);
    return a;
  }
  if (g.as<FreeGroupSpec>()) {
    Json a = Json::array();
    for (std::int32_t l : e.as<FreeWordPayload>().letters) a.push_back(l);
    return a;
  }
  if (g.as<SemidirectLatticeSpec>()) {
    const auto& p = e.as<SemidirectPayload>();
    Json j;
    j["vec"] = Json::array();
    for (std::int64_t v : p.vec) j["vec"].push_back(v);
    j["top"] = p.top;
    return j;
  }
  if (g.as<WreathSpec>()) {
    const auto& p = e.as<WreathPayload>();
    Json j;
    j["coords"] = Json::array();
    for (std::int64_t v : p.coords) j["coords"].push_back(v);
    j["shift"] = p.shift;
    return j;
  }
  Json a = Json::array();
  for (const Element& part : e.as<std::vector<Element>>())
    a.push_back(element_to_json(part));
  return a;
}

Element element_from_json(const Json& j, const GroupSpecPtr& spec) {
  const GroupSpec& g = *spec;
  try {
    if (g.as<FreeAbelianSpec>()) return vector_element(spec, as_ivec(j, "element"));
    if (g.as<FreeGroupSpec>()) {
      std::vector<std::int64_t> raw = as_ivec(j, "element");
      std::vector<std::int32_t> letters(raw.begin(), raw.end());
      return free_word_element(spec, std::move(letters));
    }
    if (g.as<SemidirectLatticeSpec>()) {
      return semidirect_element(
          spec, as_ivec(field(j, "vec", "element"), "element.vec"),
          as_int(field(j, "top", "element"), "element.top"));
    }
    if (g.as<WreathSpec>()) {
      return wreath_element(
          spec, as_ivec(field(j, "coords", "element"), "element.coords"),
          as_int(field(j, "shift", "element"), "element.shift"));
    }
    const auto& dp = *g.as<DirectProductSpec>();
    if (!j.is_array() || j.size() != dp.factors.size())
      throw SchemaError("element: expected an array of " +
                        std::to_string(dp.factors.size()) + " factor payloads");
    std::vector<Element> parts;
    parts.reserve(dp.factors.size());
    for (std::size_t i = 0; i < dp.factors.size(); ++i)
      parts.push_back(element_from_json(j[i], dp.factors[i]));
    return product_element(spec, std::move(parts));
  } catch (const InvalidParameterError& e) {
    throw SchemaError(std::string("element: ") + e.what());
  } catch (const SpecMismatchError& e) {
    throw SchemaError(std::string("element: ") + e.what());
  }
}

Json automaton_to_json(const Automaton& aut) {
  // make sure every transition label can be written as a generator word,
  // extending the declared generator list where needed
  std::vector<Element> gens = aut.declared_generators();
  std::vector<std::string> gen_keys;
  for (const Element& g : gens) gen_keys.push_back(canonical_key(g));
  Element id = identity(aut.base());
  std::string id_key = canonical_key(id);

  auto word_for = [&](const Transition& t) -> std::vector<std::int32_t> {
    if (t.label_word) return *t.label_word;
    std::string key = canonical_key(t.label);
    if (key == id_key) return {};
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gen_keys[i] == key) return {static_cast<std::int32_t>(i + 1)};
    gens.push_back(t.label);
    gen_keys.push_back(key);
    return {static_cast<std::int32_t>(gens.size())};
  };

  Json transitions = Json::array();
  for (const Transition& t : aut.transitions()) {
    Json tj;
    tj["from"] = t.from;
    Json label = Json::array();
    for (std::int32_t l : word_for(t)) label.push_back(l);
    tj["label"] = std::move(label);
    tj["to"] = t.to;
    transitions.push_back(std::move(tj));
  }

  Json j;
  j["group"] = spec_to_json(*aut.base());
  Json gj = Json::array();
  for (const Element& g : gens) gj.push_back(element_to_json(g));
  j["generators"] = std::move(gj);
  j["states"] = aut.state_count();
  j["initial"] = aut.initial();
  j["accepting"] = aut.accepting();
  j["transitions"] = std::move(transitions);
  return j;
}

Automaton automaton_from_json(const Json& j) {
  GroupSpecPtr base = spec_from_json(field(j, "group", "automaton"));
  const Json& gj = field(j, "generators", "automaton");
  if (!gj.is_array())
    throw SchemaError("automaton.generators: expected an array");
  std::vector<Element> gens;
  for (std::size_t i = 0; i < gj.size(); ++i) {
    try {
      gens.push_back(element_from_json(gj[i], base));
    } catch (const SchemaError& e) {
      throw SchemaError("automaton.generators[" + std::to_string(i) +
                        "]: " + e.what());
    }
  }

  std::size_t states = as_size(field(j, "states", "automaton"), "automaton.states");
  std::size_t initial = as_size(field(j, "initial", "automaton"), "automaton.initial");
  const Json& acc = field(j, "accepting", "automaton");
  if (!acc.is_array())
    throw SchemaError("automaton.accepting: expected an array");
  std::vector<std::size_t> accepting;
  for (std::size_t i = 0; i < acc.size(); ++i)
    accepting.push_back(
        as_size(acc[i], "automaton.accepting[" + std::to_string(i) + "]"));

  const Json& ts = field(j, "transitions", "automaton");
  if (!ts.is_array())
    throw SchemaError("automaton.transitions: expected an array");
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string where = "automaton.transitions[" + std::to_string(i) + "]";
    const Json& tj = ts[i];
    std::size_t from = as_size(field(tj, "from", where), where + ".from");
    std::size_t to = as_size(field(tj, "to", where), where + ".to");
    std::vector<std::int64_t> raw =
        as_ivec(field(tj, "label", where), where + ".label");
    std::vector<std::int32_t> word(raw.begin(), raw.end());
    Element label = [&] {
      try {
        return evaluate_word(base, gens, GeneratorWord(word, false));
      } catch (const Error& e) {
        throw SchemaError(where + ".label: " + e.what());
      }
    }();
    transitions.emplace_back(from, to, std::move(label), std::move(word));
  }

  try {
    return Automaton(base, states, initial, std::move(accepting),
                     std::move(transitions), std::move(gens));
  } catch (const Error& e) {
    throw SchemaError(std::string("automaton: ") + e.what());
  }
}

Json word_to_json(const GeneratorWord& w) {
  Json a = Json::array();
  for (std::int32_t l : w.letters) a.push_back(l);
  return a;
}

GeneratorWord word_from_json(const Json& j) {
  std::vector<std::int64_t> raw = as_ivec(j, "word");
  std::vector<std::int32_t> letters(raw.begin(), raw.end());
  try {
    return GeneratorWord(std::move(letters), false);
  } catch (const InvalidParameterError& e) {
    throw SchemaError(std::string("word: ") + e.what());
  }
}

Json stats_to_json(const SearchStats& s) {
  Json j;
  j["elements_visited"] = s.elements_visited;
  j["max_frontier"] = s.max_frontier;
  j["wall_seconds"] = s.wall_seconds;
  return j;
}

namespace {

GenOrigin origin_from_name(const std::string& s, int& from, int& to) {
  from = to = -1;
  if (s == "A-letter") return GenOrigin::ALetter;
  if (s == "separator") return GenOrigin::Separator;
  if (s == "B-letter") return GenOrigin::BLetter;
  if (s == "yPow") return GenOrigin::YPow;
  if (s == "cInvSep") return GenOrigin::CInvSep;
  if (s == "vInvLetter") return GenOrigin::VInvLetter;
  if (s.rfind("T-edge(", 0) == 0 && s.back() == ')') {
    std::string inner = s.substr(7, s.size() - 8);
    std::size_t comma = inner.find(',');
    if (comma != std::string::npos) {
      try {
        from = std::stoi(inner.substr(0, comma));
        to = std::stoi(inner.substr(comma + 1));
        return GenOrigin::TEdge;
      } catch (const std::exception&) {
      }
    }
  }
  throw SchemaError("bundle.generators: unknown origin tag '" + s + "'");
}

}  // namespace

Json bundle_to_json(const ReductionBundle& b) {
  Json j;
  j["variant"] = variant_name(b.variant);
  j["ambient"] = spec_to_json(*b.ambient);
  Json gens = Json::array();
  for (const BundleGenerator& g : b.generators) {
    Json gj;
    gj["element"] = element_to_json(g.element);
    gj["origin"] = origin_name(g.origin, g.edge_from, g.edge_to);
    if (g.transition >= 0) gj["transition"] = g.transition;
    gj["stage"] = g.stage;
    gens.push_back(std::move(gj));
  }
  j["generators"] = std::move(gens);
  j["target"] = element_to_json(b.target);
  j["g_factors"] = b.g_factors;
  if (!b.source_hash.empty()) j["source_hash"] = b.source_hash;
  if (b.normalized) j["normalized_automaton"] = automaton_to_json(*b.normalized);
  if (!b.state_images.empty()) j["state_images"] = b.state_images;
  return j;
}

ReductionBundle bundle_from_json(const Json& j) {
  ReductionBundle b(
      spec_from_json(field(j, "ambient", "bundle")),
      variant_from_name(as_str(field(j, "variant", "bundle"), "bundle.variant")));
  b.target = element_from_json(field(j, "target", "bundle"), b.ambient);
  b.g_factors = j.contains("g_factors")
                    ? as_size(j["g_factors"], "bundle.g_factors")
                    : 1;
  const Json& gens = field(j, "generators", "bundle");
  if (!gens.is_array())
    throw SchemaError("bundle.generators: expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Json& gj = gens[i];
    std::string where = "bundle.generators[" + std::to_string(i) + "]";
    BundleGenerator g{
        element_from_json(field(gj, "element", where), b.ambient),
        GenOrigin::ALetter};
    g.origin = origin_from_name(as_str(field(gj, "origin", where), where + ".origin"),
                                g.edge_from, g.edge_to);
    if (gj.contains("transition"))
      g.transition =
          static_cast<int>(as_int(gj["transition"], where + ".transition"));
    if (gj.contains("stage"))
      g.stage = static_cast<int>(as_int(gj["stage"], where + ".stage"));
    b.generators.push_back(std::move(g));
  }
  if (j.contains("source_hash"))
    b.source_hash = as_str(j["source_hash"], "bundle.source_hash");
  if (j.contains("normalized_automaton"))
    b.normalized = automaton_from_json(j["normalized_automaton"]);
  if (j.contains("state_images")) {
    for (const Json& v : j["state_images"])
      b.state_images.push_back(as_size(v, "bundle.state_images"));
  }
  return b;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("JSON parse error in '" + path + "': " + e.what());
  }
}

}  // namespace rsk
