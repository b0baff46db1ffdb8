#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "jchm/sweep.hpp"

namespace jchm {

/// Column names of grid files, in order.
const std::vector<std::string>& grid_columns();

/// Shortest round-trip-exact text for a double (17 significant digits).
std::string format_double(double v);

/// Header row plus one row per cell, row-major in y.
void write_grid_csv(std::ostream& os, const PhaseGrid& grid);

/// {"spec": spec_echo, "columns": {name: [values...]}}
nlohmann::json grid_to_json(const PhaseGrid& grid, const nlohmann::json& spec_echo);

nlohmann::json to_json(const GridSpec& spec);
nlohmann::json to_json(const ConvergenceReport& report);

}  // namespace jchm
