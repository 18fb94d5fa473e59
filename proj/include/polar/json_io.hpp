#ifndef POLAR_JSON_IO_HPP
#define POLAR_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "polar/inclexcl.hpp"
#include "polar/scalar.hpp"
#include "polar/symtensor.hpp"
#include "polar/vector.hpp"
#include "polar/wick.hpp"

namespace polar {

// Serialized forms, used by every file format and by campaign reproducers:
//   scalar     "p/q" (or "p") for rationals, {"mod": p, "val": v} for GF(p)
//   field      "rational" or {"gfp": p}
//   vector     [scalar, ...]
//   tensor     {"order", "dim", "field", "entries": [{"index": [...], "value": ...}]}
//   covariance {"dim", "rows": [[scalar, ...], ...]}
//   set system {"universe": [label, ...], "subsets": [[label, ...], ...]}
// Malformed input of any kind raises ParseError.

nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j, const FieldDescriptor& field);

nlohmann::json field_to_json(const FieldDescriptor& f);
FieldDescriptor field_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j, const FieldDescriptor& field);

nlohmann::json tensor_to_json(const SymMultiMap& u);
SymMultiMap tensor_from_json(const nlohmann::json& j);

nlohmann::json covariance_to_json(const Covariance& cov);
Covariance covariance_from_json(const nlohmann::json& j);

SetSystem set_system_from_json(const nlohmann::json& j);

// Parses a JSON document from text or from a file on disk.
nlohmann::json parse_json_text(const std::string& text);
nlohmann::json load_json_file(const std::string& path);

}  // namespace polar

#endif
