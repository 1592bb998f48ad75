#pragma once

#include "hutch/constructions.hpp"
#include "hutch/probes.hpp"

#include <json.hpp>

#include <string>

namespace hutch {

using Json = nlohmann::ordered_json;

/// Reads a "p/q" string at `field`; any other JSON type or a decimal string
/// throws ParseError naming the field.
Rational rational_from_json(const Json& j, const std::string& field);
inline Json rational_to_json(const Rational& r) { return to_string(r); }

// ArcSet: [{"start": "p/q", "length": "p/q"}, ...]
Json to_json(const ArcSet& a);
ArcSet arcset_from_json(const Json& j, const std::string& field);
Json to_json(const Arc& a);
Arc arc_from_json(const Json& j, const std::string& field);

// PLHomeo: {"offset": "p/q", "breakpoints": [["x", "y"], ...]}
Json to_json(const PLHomeo& f);
PLHomeo homeo_from_json(const Json& j, const std::string& field);

// IFS: {"label": ..., "generators": [PLHomeo, ...]}
Json to_json(const IFS& system);
IFS ifs_from_json(const Json& j, const std::string& field);

Json to_json(const ConvergenceReport& r);
Json to_json(const MinimalityReport& r);
Json to_json(const InvarianceReport& r);
Json to_json(const ModulusReport& r);
Json to_json(const SensitivityReport& r);

}  // namespace hutch
