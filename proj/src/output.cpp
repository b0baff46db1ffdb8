#include "jchm/output.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace jchm {

const std::vector<std::string>& grid_columns() {
  static const std::vector<std::string> columns{"x_log10_kappa", "y_lmu_minus_omega", "psi", "energy",
                                                "L_expect",      "phase",             "n_max", "converged"};
  return columns;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_grid_csv(std::ostream& os, const PhaseGrid& grid) {
  const auto& cols = grid_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (const GridCell& cell : grid.cells) {
    const PhasePoint& p = cell.point;
    os << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.psi_star) << ','
       << format_double(p.energy) << ',' << format_double(p.l_expect) << ',' << phase_token(cell) << ','
       << p.n_max_used << ',' << (p.converged ? 1 : 0) << '\n';
  }
}

nlohmann::json grid_to_json(const PhaseGrid& grid, const nlohmann::json& spec_echo) {
  nlohmann::json x = nlohmann::json::array(), y = nlohmann::json::array(), psi = nlohmann::json::array(),
                 energy = nlohmann::json::array(), lexp = nlohmann::json::array(),
                 phase = nlohmann::json::array(), nmax = nlohmann::json::array(),
                 conv = nlohmann::json::array();
  for (const GridCell& cell : grid.cells) {
    const PhasePoint& p = cell.point;
    x.push_back(p.x);
    y.push_back(p.y);
    psi.push_back(p.psi_star);
    energy.push_back(p.energy);
    lexp.push_back(p.l_expect);
    phase.push_back(phase_token(cell));
    nmax.push_back(p.n_max_used);
    conv.push_back(p.converged);
  }
  nlohmann::json columns;
  const auto& names = grid_columns();
  columns[names[0]] = std::move(x);
  columns[names[1]] = std::move(y);
  columns[names[2]] = std::move(psi);
  columns[names[3]] = std::move(energy);
  columns[names[4]] = std::move(lexp);
  columns[names[5]] = std::move(phase);
  columns[names[6]] = std::move(nmax);
  columns[names[7]] = std::move(conv);
  return {{"spec", spec_echo}, {"columns", std::move(columns)}};
}

nlohmann::json to_json(const GridSpec& spec) {
  return {{"l", spec.model.l},   {"z", spec.model.z},   {"mu", spec.model.mu}, {"delta", spec.model.delta},
          {"x_lo", spec.x_lo},   {"x_hi", spec.x_hi},   {"nx", spec.nx},       {"y_lo", spec.y_lo},
          {"y_hi", spec.y_hi},   {"ny", spec.ny}};
}

nlohmann::json to_json(const ConvergenceReport& report) {
  return {{"n_max_sequence", report.n_max_sequence},
          {"energies", report.energies},
          {"l_expects", report.l_expects},
          {"converged", report.converged},
          {"pinned_at_truncation", report.pinned_at_truncation},
          {"tracking_truncation", report.tracking_truncation}};
}

}  // namespace jchm
