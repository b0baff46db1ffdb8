#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jchm/classify.hpp"

namespace jchm {

/// Model constants shared by every point of a sweep. A point is addressed by
/// x = log10(kappa) and y = l*mu - omega; Omega = omega - delta.
struct SweepModel {
  int l = 1;
  int z = 2;
  double mu = 1.0;
  double delta = 0.0;

  ModelParams at(double x, double y) const { return ModelParams::from_axes(l, z, mu, delta, x, y); }
  /// omega > 0 and Omega >= 0 at this y.
  bool valid_y(double y) const;
  void validate() const;
};

struct GridSpec {
  SweepModel model;
  double x_lo = -4.0;
  double x_hi = -0.2;
  int nx = 81;
  double y_lo = -2.0;
  double y_hi = 0.5;
  int ny = 101;

  /// x in [-4, -0.2] (81 points); y in [-2, 0.5] (101 points) for l = 1 and
  /// [-1.5, 0.3] for l = 2..4.
  static GridSpec defaults_for(int l);

  double x_at(int i) const;
  double y_at(int j) const;
  void validate() const;
  std::vector<int> invalid_rows() const;
};

enum class CellStatus { Classified, Indeterminate, Invalid };

struct GridCell {
  PhasePoint point;
  CellStatus status = CellStatus::Classified;
  std::string message;  // diagnostic for Indeterminate / Invalid cells
};

/// "MI:<L>", "SF", "FORBIDDEN", "INDET" or "INVALID".
std::string phase_token(const GridCell& cell);

struct PhaseGrid {
  GridSpec spec;
  std::vector<GridCell> cells;  // row-major in y: index = j * nx + i

  const GridCell& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * spec.nx + i]; }
};

/// Classifies one point; Indeterminate and Invalid outcomes are recorded in the
/// cell instead of thrown.
GridCell evaluate_cell(const SweepModel& model, double x, double y, const ClassifyOptions& options);

/// Every cell is classified independently; the result does not depend on
/// `jobs` or scheduling order.
PhaseGrid run_grid(const GridSpec& spec, const ClassifyOptions& options = {}, int jobs = 1);

enum class Axis { X, Y };

using CellPredicate = std::function<bool(const GridCell&)>;

CellPredicate token_is(std::string token);

/// Bisection along `axis` (the other coordinate held at `fixed`) for the point
/// where `predicate` changes value. Throws BracketError if both bracket ends
/// agree.
double refine_boundary(const SweepModel& model, Axis axis, double fixed, std::pair<double, double> bracket,
                       const CellPredicate& predicate, const ClassifyOptions& options = {}, double tol = 1e-3);

struct ScanPoint {
  double x = 0.0;
  double energy = 0.0;
  double psi_star = 0.0;
  double l_expect = 0.0;
  std::optional<std::string> error;
};

/// Minimum mean-field energy along the kappa axis at fixed y.
std::vector<ScanPoint> energy_scan(const SweepModel& model, double y, const std::vector<double>& xs,
                                   const ClassifyOptions& options = {}, int jobs = 1);

/// dE/dx by finite differences (one-sided at the ends).
std::vector<double> scan_slopes(const std::vector<ScanPoint>& scan);

struct BoundarySegment {
  std::string label_a;  // lexicographically smaller token
  std::string label_b;
  std::vector<std::array<double, 2>> points;  // (x, y) polyline
};

/// Polylines along cell edges separating 4-neighbour cells with different
/// tokens, one or more per label pair.
std::vector<BoundarySegment> extract_boundary(const PhaseGrid& grid);

}  // namespace jchm
