#pragma once

// JSON and text serialization of groups, curves, lattices and reports.
// Every document carries "schema": 1; readers reject unknown fields.

#include "nsforge/functorial.hpp"
#include "nsforge/ns.hpp"

#include <json.hpp>

namespace nsforge::io {

using Json = nlohmann::json;

inline constexpr int kSchema = 1;

Json to_json(const Integer& v);
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const FinAbGroup& g);

Integer integer_from_json(const Json& j);
IntVector vector_from_json(const Json& j);
/// `cols` fixes the width of an empty matrix.
IntMatrix matrix_from_json(const Json& j, std::size_t cols = 0);

/// Throws InputError naming the first key of `j` outside `allowed`.
void reject_unknown_fields(const Json& j, std::initializer_list<const char*> allowed, const std::string& where);

/// {"schema": 1, "factors": [ {"catalog": "GL", "n": 2} | {"name", "n", "roots", "coroots"} ... ]}
/// or a single factor object with "schema". Returns the factors in order.
std::vector<Reductive> groups_from_json(const Json& j);
Json group_to_json(const Reductive& g);

/// {"schema": 1, "involution": [[...]], "unit": [...]}
EndRing end_ring_from_json(const Json& j);
Json curve_to_json(const CurveModel& c);

Json ns_to_json(const NSLattice& ns);
Json report_to_json(const PicardReport& r);
Json map_to_json(const NSMap& m);

std::string report_to_text(const PicardReport& r);
std::string ns_to_text(const NSLattice& ns);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

} // namespace nsforge::io
