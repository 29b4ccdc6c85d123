// JSON encoding of the library types. Rationals are "p/q" strings, integers are numbers when they
// fit in 64 bits and decimal strings otherwise; parsers accept both.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "oda/surface.hpp"

namespace oda::io {

using json = nlohmann::ordered_json;

json to_json(const Int& x);
json to_json(const Rat& x);
json to_json(const IntVector& v);
json to_json(const RatVector& v);
json to_json(const RationalPolytope& p);
json to_json(const Fan& f);
json to_json(const ToricLineBundle& l);
json to_json(const Cone& c);
json to_json(const CokernelReport& r, bool with_hits = true);
json to_json(const CoverReport& r);
json to_json(const PsiReport& r);
json to_json(const QuasiCoverReport& r);
json to_json(const BoundReport& r);
json to_json(const OrderReport& r);
json to_json(const ContactPointSet& c);
json to_json(const TranslationVectorType& t);
json to_json(const SfhnReport& r);

// Errors carry the JSON path of the offending value, e.g. "/vertices/2/1".
Int int_from(const json& j, const std::string& path);
Rat rat_from(const json& j, const std::string& path);
IntVector int_vector_from(const json& j, const std::string& path);
RatVector rat_vector_from(const json& j, const std::string& path);

// {"vertices": [...]} or a line bundle, whose polytope is taken
RationalPolytope polytope_from(const json& j, const std::string& path = "");
// {"rays": [...], "cones": [...]} or {"preset": "p2" | "p1xp1" | "p1" | "p3" | "p1xp2" | "f<a>"}
Fan fan_from(const json& j, const std::string& path = "");
// {"fan": <fan>, "coeffs": [...]}
ToricLineBundle bundle_from(const json& j, const std::string& path = "");
Cone cone_from(const json& j, const std::string& path = "");

// Parses a file; malformed JSON is reported with the file name and byte offset.
json read_file(const std::string& file);
json parse_text(const std::string& text, const std::string& name);

}  // namespace oda::io
