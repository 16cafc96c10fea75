#pragma once

#include <string>

#include <json.hpp>

#include "rsk/automaton.hpp"
#include "rsk/group.hpp"
#include "rsk/oracle.hpp"
#include "rsk/reduction.hpp"

namespace rsk {

using Json = nlohmann::json;

// Schemas are documented in docs/FORMATS.md. All parsers throw SchemaError
// with the offending field in the message.

Json spec_to_json(const GroupSpec& spec);
GroupSpecPtr spec_from_json(const Json& j);

Json element_to_json(const Element& e);
Element element_from_json(const Json& j, const GroupSpecPtr& spec);

Json automaton_to_json(const Automaton& aut);
Automaton automaton_from_json(const Json& j);

Json bundle_to_json(const ReductionBundle& b);
ReductionBundle bundle_from_json(const Json& j);

Json word_to_json(const GeneratorWord& w);
GeneratorWord word_from_json(const Json& j);

Json stats_to_json(const SearchStats& s);

Json load_json_file(const std::string& path);

}  // namespace rsk
