#pragma once

#include <json.hpp>

#include "schottky_zeta/differentials.hpp"
#include "schottky_zeta/schottky.hpp"
#include "schottky_zeta/zetaprod.hpp"

namespace szeta {

using Json = nlohmann::ordered_json;

inline constexpr const char* kGroupSpecSchema = "schottky-zeta/group-spec/v1";
inline constexpr const char* kRunReportSchema = "schottky-zeta/run-report/v1";

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json sphere_point_to_json(const SpherePoint& p);
SpherePoint sphere_point_from_json(const Json& j);

Json circle_to_json(const Circle& c);
Circle circle_from_json(const Json& j);

/// Parses a versioned group-spec document. Throws BadSpec on schema or shape
/// problems.
GroupSpec parse_group_spec(const Json& j);

/// Self-describing echo of a built group: fixed points, multipliers,
/// determinant-1 matrices, and the circle report.
Json resolved_group_json(const SchottkyGroup& group);

Json product_value_to_json(const ProductValue& pv);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

}  // namespace szeta
