#pragma once

#include <string>

#include <json.hpp>

#include "ptfloquet/coefficients.hpp"

namespace ptfloquet {

// Coefficient schema:
//   {"n": int, "m": int, "P": [[[{"a": [...], "b": [...]}, ...], ...], ...]}
// with P[k-1][i][j] the (i, j) entry of P_k. Throws MalformedInputError.
CoefficientSet coefficient_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CoefficientSet& set);

// Throws InputError naming the path when the file is missing or unreadable.
CoefficientSet load_coefficient_file(const std::string& path);

} // namespace ptfloquet
