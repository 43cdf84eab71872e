#pragma once

#include <string>

#include "json.hpp"

#include "hamforge/delta_builder.hpp"
#include "hamforge/filter_algebra.hpp"
#include "hamforge/lp_compiler.hpp"
#include "hamforge/pulse_engine.hpp"

namespace hamforge {

using json = nlohmann::json;

// Parse text as JSON; syntax errors become InputError with "line L, column C".
json parse_json_text(const std::string& text, const std::string& source = "<input>");
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {"op":"lambda"|"gamma"|"sum"|"prod","k":..,"terms":[{"w":..,"e":..}],"factors":[..]}
// Weights may be numbers (taken exactly) or "p/q" strings; they are written as
// strings so the round trip is exact.
json expr_to_json(const FilterExpr& e);
FilterExpr expr_from_json(const json& j);

// {"n":..,"omega_x":[..],"omega_y":[..],"omega_z":[..],"b":..}
json profile_to_json(const CouplingProfile& p);
CouplingProfile profile_from_json(const json& j);

json program_to_json(const CompiledProgram& p);
CompiledProgram program_from_json(const json& j);

json recipe_to_json(const DeltaRecipe& r);

// {"n":..,"total_time":..,"flips":[[t,q],..]}; times exported as doubles
json flattened_to_json(const FlattenedSchedule& f);
FlattenedSchedule flattened_from_json(const json& j);

}  // namespace hamforge
