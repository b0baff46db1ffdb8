#include "jchm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "jchm/error.hpp"
#include "jchm/parallel.hpp"

namespace jchm {

bool SweepModel::valid_y(double y) const {
  const double omega = l * mu - y;
  return std::isfinite(omega) && omega > 0.0 && omega - delta >= 0.0;
}

void SweepModel::validate() const {
  if (l < 1 || l > 4) throw InvalidParameter("l", "photon order must lie in 1..4");
  if (z < 1) throw InvalidParameter("z", "coordination number must be >= 1");
  if (!std::isfinite(mu)) throw InvalidParameter("mu", "must be finite");
  if (!std::isfinite(delta)) throw InvalidParameter("delta", "must be finite");
}

GridSpec GridSpec::defaults_for(int l) {
  GridSpec spec;
  spec.model.l = l;
  if (l != 1) {
    spec.y_lo = -1.5;
    spec.y_hi = 0.3;
  }
  return spec;
}

namespace {

double axis_at(double lo, double hi, int n, int k) {
  if (n == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

}  // namespace

double GridSpec::x_at(int i) const { return axis_at(x_lo, x_hi, nx, i); }
double GridSpec::y_at(int j) const { return axis_at(y_lo, y_hi, ny, j); }

void GridSpec::validate() const {
  model.validate();
  if (nx < 1) throw InvalidParameter("x-range", "needs at least one point");
  if (ny < 1) throw InvalidParameter("y-range", "needs at least one point");
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || x_hi < x_lo) {
    throw InvalidParameter("x-range", "bounds must be finite with lo <= hi");
  }
  if (!std::isfinite(y_lo) || !std::isfinite(y_hi) || y_hi < y_lo) {
    throw InvalidParameter("y-range", "bounds must be finite with lo <= hi");
  }
}

std::vector<int> GridSpec::invalid_rows() const {
  std::vector<int> rows;
  for (int j = 0; j < ny; ++j) {
    if (!model.valid_y(y_at(j))) rows.push_back(j);
  }
  return rows;
}

std::string phase_token(const GridCell& cell) {
  switch (cell.status) {
    case CellStatus::Invalid:
      return "INVALID";
    case CellStatus::Indeterminate:
      return "INDET";
    case CellStatus::Classified:
      break;
  }
  return to_token(cell.point.label);
}

GridCell evaluate_cell(const SweepModel& model, double x, double y, const ClassifyOptions& options) {
  GridCell cell;
  cell.point.x = x;
  cell.point.y = y;
  if (!model.valid_y(y)) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    cell.status = CellStatus::Invalid;
    cell.message = "omega = l*mu - y must be > 0 (and Omega = omega - delta >= 0)";
    cell.point.psi_star = cell.point.energy = cell.point.l_expect = nan;
    return cell;
  }
  try {
    cell.point = classify_point(model.at(x, y), options);
  } catch (const IndeterminateError& e) {
    const auto& r = e.report();
    cell.status = CellStatus::Indeterminate;
    cell.message = e.what();
    cell.point.psi_star = 0.0;
    cell.point.energy = r.energies.back();
    cell.point.l_expect = r.l_expects.back();
    cell.point.n_max_used = r.n_max_sequence.back();
    cell.point.converged = r.converged;
    cell.point.report = r;
  }
  // Keep the exact grid coordinates rather than log10(10^x).
  cell.point.x = x;
  cell.point.y = y;
  return cell;
}

PhaseGrid run_grid(const GridSpec& spec, const ClassifyOptions& options, int jobs) {
  spec.validate();
  PhaseGrid grid{spec, std::vector<GridCell>(static_cast<std::size_t>(spec.nx) * spec.ny)};
  parallel_for(grid.cells.size(), jobs, [&](std::size_t idx) {
    const int i = static_cast<int>(idx % spec.nx);
    const int j = static_cast<int>(idx / spec.nx);
    grid.cells[idx] = evaluate_cell(spec.model, spec.x_at(i), spec.y_at(j), options);
  });
  return grid;
}

CellPredicate token_is(std::string token) {
  return [token = std::move(token)](const GridCell& cell) { return phase_token(cell) == token; };
}

double refine_boundary(const SweepModel& model, Axis axis, double fixed, std::pair<double, double> bracket,
                       const CellPredicate& predicate, const ClassifyOptions& options, double tol) {
  model.validate();
  if (!(tol > 0.0)) throw InvalidParameter("tol", "must be > 0");
  auto eval = [&](double t) {
    const GridCell cell = axis == Axis::X ? evaluate_cell(model, t, fixed, options)
                                          : evaluate_cell(model, fixed, t, options);
    return predicate(cell);
  };
  auto [lo, hi] = bracket;
  const bool at_lo = eval(lo);
  if (eval(hi) == at_lo) {
    throw BracketError("bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] does not straddle a phase boundary");
  }
  while (std::abs(hi - lo) > tol) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<ScanPoint> energy_scan(const SweepModel& model, double y, const std::vector<double>& xs,
                                   const ClassifyOptions& options, int jobs) {
  model.validate();
  if (!model.valid_y(y)) throw InvalidParameter("y", "omega = l*mu - y must be > 0");
  std::vector<ScanPoint> out(xs.size());
  const int n_max = options.resolved_base(model.l);
  const HilbertSpace space = build_space(model.l, n_max);
  const PsiSearchSpec spec = options.psi_spec(n_max);
  parallel_for(xs.size(), jobs, [&](std::size_t k) {
    ScanPoint& p = out[k];
    p.x = xs[k];
    try {
      const MeanFieldSolution sol = minimize_over_psi(model.at(xs[k], y), space, spec);
      p.energy = sol.energy;
      p.psi_star = sol.psi_star;
      p.l_expect = sol.l_expect;
    } catch (const std::exception& e) {
      p.energy = p.psi_star = p.l_expect = std::numeric_limits<double>::quiet_NaN();
      p.error = e.what();
    }
  });
  return out;
}

std::vector<double> scan_slopes(const std::vector<ScanPoint>& scan) {
  const std::size_t n = scan.size();
  std::vector<double> slopes(n, std::numeric_limits<double>::quiet_NaN());
  if (n < 2) return slopes;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = k == 0 ? 0 : k - 1;
    const std::size_t b = k + 1 == n ? n - 1 : k + 1;
    slopes[k] = (scan[b].energy - scan[a].energy) / (scan[b].x - scan[a].x);
  }
  return slopes;
}

namespace {

// Dual-grid vertex in doubled index units: (2i+1, 2j+1) is the corner between
// cells (i,j), (i+1,j), (i,j+1), (i+1,j+1).
using Vertex = std::pair<int, int>;
using Edge = std::pair<Vertex, Vertex>;

std::vector<std::vector<Vertex>> chain(const std::vector<Edge>& edges) {
  std::map<Vertex, std::vector<std::size_t>> incident;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    incident[edges[e].first].push_back(e);
    incident[edges[e].second].push_back(e);
  }
  std::vector<bool> used(edges.size(), false);
  std::vector<std::vector<Vertex>> lines;
  auto walk = [&](Vertex start) {
    std::vector<Vertex> line{start};
    Vertex at = start;
    for (;;) {
      auto& inc = incident[at];
      auto it = std::find_if(inc.begin(), inc.end(), [&](std::size_t e) { return !used[e]; });
      if (it == inc.end()) break;
      used[*it] = true;
      const Edge& e = edges[*it];
      at = e.first == at ? e.second : e.first;
      line.push_back(at);
    }
    lines.push_back(std::move(line));
  };
  // Open chains first (odd-degree ends), then closed loops.
  for (const auto& [v, inc] : incident) {
    if (inc.size() % 2 == 1 && std::any_of(inc.begin(), inc.end(), [&](std::size_t e) { return !used[e]; })) {
      walk(v);
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!used[e]) walk(edges[e].first);
  }
  return lines;
}

}  // namespace

std::vector<BoundarySegment> extract_boundary(const PhaseGrid& grid) {
  const GridSpec& s = grid.spec;
  std::map<std::pair<std::string, std::string>, std::vector<Edge>> by_pair;
  auto add = [&](std::string a, std::string b, Edge e) {
    if (b < a) std::swap(a, b);
    by_pair[{a, b}].push_back(e);
  };
  for (int j = 0; j < s.ny; ++j) {
    for (int i = 0; i < s.nx; ++i) {
      const std::string here = phase_token(grid.at(i, j));
      if (i + 1 < s.nx) {
        const std::string right = phase_token(grid.at(i + 1, j));
        if (right != here) add(here, right, {{2 * i + 1, 2 * j - 1}, {2 * i + 1, 2 * j + 1}});
      }
      if (j + 1 < s.ny) {
        const std::string up = phase_token(grid.at(i, j + 1));
        if (up != here) add(here, up, {{2 * i - 1, 2 * j + 1}, {2 * i + 1, 2 * j + 1}});
      }
    }
  }
  const double dx = s.nx > 1 ? (s.x_hi - s.x_lo) / (s.nx - 1) : 0.0;
  const double dy = s.ny > 1 ? (s.y_hi - s.y_lo) / (s.ny - 1) : 0.0;
  std::vector<BoundarySegment> out;
  for (const auto& [pair, edges] : by_pair) {
    for (const auto& line : chain(edges)) {
      BoundarySegment seg{pair.first, pair.second, {}};
      for (const auto& [X, Y] : line) seg.points.push_back({s.x_lo + 0.5 * X * dx, s.y_lo + 0.5 * Y * dy});
      out.push_back(std::move(seg));
    }
  }
  return out;
}

}  // namespace jchm
