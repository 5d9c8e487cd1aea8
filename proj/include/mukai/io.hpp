#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mukai/constructor.hpp"
#include "mukai/lattice.hpp"
#include "mukai/wbn.hpp"

namespace mukai {

inline constexpr int kFixtureSchemaVersion = 1;

/// Parses a surface fixture:
///   {"schema_version": 1, "rank": 2, "gram": [[4, 0], [0, -2]],
///    "ample": [1, 0], "labels": ["H", "D"], "cone_model": "user-asserted"}
/// Syntax errors carry line and column; semantic errors name the field.
SurfaceContext parse_surface(std::string_view text, const std::string& origin = "<input>");
SurfaceContext load_surface(const std::string& path);

nlohmann::json surface_to_json(const SurfaceContext& ctx);

/// "r; c1,...,c_rho; a"
MukaiVector parse_mukai(std::string_view text, std::size_t rank);
std::string format_mukai(const MukaiVector& v);

/// "c1,...,c_rho" (parentheses optional).
DivisorClass parse_divisor(std::string_view text, std::size_t rank);
std::string format_divisor(const DivisorClass& d);

/// Comma separated integers, e.g. "2,2,0".
std::vector<Integer> parse_integer_list(std::string_view text);

/// Small values as JSON numbers, anything beyond 64 bits as a decimal string.
nlohmann::json to_json(const Integer& x);
nlohmann::json to_json(const CohomologyProfile& p);
nlohmann::json to_json(const IsotropicDecomposition& dec);
nlohmann::json to_json(const TranslationTuple& t);
nlohmann::json to_json(const WbnVerdict& verdict);
nlohmann::json to_json(const CounterexampleRecord& rec);
nlohmann::json to_json(const WallOrbit& orbit);
nlohmann::json to_json(const UlrichReport& report);

}  // namespace mukai
