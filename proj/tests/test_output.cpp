#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "jchm/output.hpp"

using namespace jchm;

namespace {

PhaseGrid two_cells() {
  PhaseGrid g;
  g.spec.nx = 2;
  g.spec.ny = 1;
  g.cells.resize(2);
  g.cells[0].point.x = -4.0;
  g.cells[0].point.y = 0.1;
  g.cells[0].point.energy = -1.0 / 3.0;
  g.cells[0].point.label = PhaseLabel::mott(2);
  g.cells[0].point.n_max_used = 80;
  g.cells[0].point.converged = true;
  g.cells[1].status = CellStatus::Invalid;
  g.cells[1].point.energy = std::numeric_limits<double>::quiet_NaN();
  return g;
}

}  // namespace

TEST_CASE("column names") {
  CHECK(grid_columns() == std::vector<std::string>{"x_log10_kappa", "y_lmu_minus_omega", "psi", "energy", "L_expect",
                                                   "phase", "n_max", "converged"});
}

TEST_CASE("doubles round-trip through their text form") {
  for (double v : {1.0 / 3.0, -0.6180339887498949, 1e-300, 6.02214076e23, 0.1 + 0.2}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("grid csv layout") {
  std::ostringstream os;
  write_grid_csv(os, two_cells());
  std::istringstream is(os.str());
  std::string header, row0, row1, extra;
  std::getline(is, header);
  std::getline(is, row0);
  std::getline(is, row1);
  CHECK(header == "x_log10_kappa,y_lmu_minus_omega,psi,energy,L_expect,phase,n_max,converged");
  CHECK(row0 == "-4,0.10000000000000001,0,-0.33333333333333331,0,MI:2,80,1");
  CHECK(row1 == "0,0,0,nan,0,INVALID,0,0");
  CHECK_FALSE(std::getline(is, extra));
}

TEST_CASE("grid json is column oriented") {
  const auto j = grid_to_json(two_cells(), {{"l", 2}});
  CHECK(j["spec"]["l"] == 2);
  CHECK(j["columns"]["phase"][0] == "MI:2");
  CHECK(j["columns"]["phase"][1] == "INVALID");
  CHECK(j["columns"]["converged"][0] == true);
  CHECK(j["columns"]["energy"][1].dump() == "null");
  CHECK(j["columns"].size() == grid_columns().size());
}

TEST_CASE("spec and report serialisation") {
  const auto s = to_json(GridSpec::defaults_for(2));
  CHECK(s["l"] == 2);
  CHECK(s["ny"] == 101);
  CHECK(s["y_lo"] == -1.5);
  ConvergenceReport r;
  r.n_max_sequence = {40, 80};
  r.energies = {0.0, -1.0};
  r.pinned_at_truncation = true;
  const auto jr = to_json(r);
  CHECK(jr["n_max_sequence"][1] == 80);
  CHECK(jr["pinned_at_truncation"] == true);
  CHECK(jr["converged"] == false);
}
