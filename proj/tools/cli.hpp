#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace jchm::cli {

enum class Command { Point, Diagram, Boundary, Scan, Analytic, Validate };

/// `lo:hi` or `lo:hi:n`.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;  // 0 when omitted
};

Range parse_range(const std::string& text, const std::string& field);

/// Fully resolved run configuration (flags > config file > defaults).
struct RunConfig {
  Command command = Command::Point;
  int l = 1;
  int z = 2;
  double mu = 1.0;
  double delta = 0.0;
  std::optional<double> x;
  std::optional<double> y;
  std::optional<Range> x_range;
  std::optional<Range> y_range;
  int n_max = 0;  // 0: per-l default
  std::optional<double> psi_max;
  std::optional<double> psi_eps;
  double tol = 1e-10;
  double tol_conv = 1e-8;
  double pin_fraction = 0.8;
  int jobs = 1;
  std::string out;  // empty: stdout
  std::string format = "csv";
  std::string phase;         // boundary: token on the lower bracket side
  std::vector<int> only;     // validate: subset of criteria
};

nlohmann::json to_json(const RunConfig& config);

/// Exit codes: 0 success, 1 invalid parameters, 2 partial/indeterminate
/// result, 3 acceptance failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_point(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_diagram(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_boundary(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_analytic(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace jchm::cli
