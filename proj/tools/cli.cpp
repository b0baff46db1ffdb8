#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jchm/acceptance.hpp"
#include "jchm/analytic.hpp"
#include "jchm/classify.hpp"
#include "jchm/error.hpp"
#include "jchm/output.hpp"
#include "jchm/parallel.hpp"
#include "jchm/sweep.hpp"

namespace jchm::cli {

Range parse_range(const std::string& text, const std::string& field) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 2 && parts.size() != 3) throw InvalidParameter(field, "expected lo:hi or lo:hi:n, got '" + text + "'");
  Range r;
  try {
    std::size_t used = 0;
    r.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    r.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    if (parts.size() == 3) {
      r.n = std::stoi(parts[2], &used);
      if (used != parts[2].size() || r.n < 1) throw std::invalid_argument(parts[2]);
    }
  } catch (const std::exception&) {
    throw InvalidParameter(field, "cannot parse '" + text + "' as lo:hi[:n]");
  }
  if (!(r.hi >= r.lo)) throw InvalidParameter(field, "needs lo <= hi");
  return r;
}

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::Point: return "point";
    case Command::Diagram: return "diagram";
    case Command::Boundary: return "boundary";
    case Command::Scan: return "scan";
    case Command::Analytic: return "analytic";
    case Command::Validate: return "validate";
  }
  return "?";
}

ClassifyOptions classify_options(const RunConfig& c) {
  ClassifyOptions o;
  o.base_n_max = c.n_max;
  o.psi_max = c.psi_max;
  o.psi_zero_eps = c.psi_eps;
  o.eig_tol = c.tol;
  o.probe.tol_conv = c.tol_conv;
  o.probe.pin_fraction = c.pin_fraction;
  return o;
}

SweepModel sweep_model(const RunConfig& c) {
  SweepModel m{c.l, c.z, c.mu, c.delta};
  m.validate();
  return m;
}

GridSpec grid_spec(const RunConfig& c) {
  GridSpec spec = GridSpec::defaults_for(c.l);
  spec.model = sweep_model(c);
  if (c.x_range) {
    spec.x_lo = c.x_range->lo;
    spec.x_hi = c.x_range->hi;
    if (c.x_range->n > 0) spec.nx = c.x_range->n;
  }
  if (c.y_range) {
    spec.y_lo = c.y_range->lo;
    spec.y_hi = c.y_range->hi;
    if (c.y_range->n > 0) spec.ny = c.y_range->n;
  }
  spec.validate();
  return spec;
}

void check_format(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") throw InvalidParameter("format", "must be csv or json");
}

// Writes to --out when given, otherwise to `out`.
void emit(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& writer) {
  if (c.out.empty()) {
    writer(out);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw InvalidParameter("out", "cannot open '" + c.out + "' for writing");
  writer(file);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j{{"command", command_name(c.command)},
                   {"l", c.l},
                   {"z", c.z},
                   {"mu", c.mu},
                   {"delta", c.delta},
                   {"n_max", c.n_max > 0 ? c.n_max : default_base_n_max(c.l)},
                   {"tol", c.tol},
                   {"tol_conv", c.tol_conv},
                   {"pin_fraction", c.pin_fraction},
                   {"format", c.format}};
  const int n_max = c.n_max > 0 ? c.n_max : default_base_n_max(c.l);
  const PsiSearchSpec psi = classify_options(c).psi_spec(n_max);
  j["psi_max"] = psi.psi_max;
  j["psi_eps"] = psi.psi_zero_eps;
  if (c.x) j["x"] = *c.x;
  if (c.y) j["y"] = *c.y;
  if (c.x_range) j["x_range"] = {c.x_range->lo, c.x_range->hi, c.x_range->n};
  if (c.y_range) j["y_range"] = {c.y_range->lo, c.y_range->hi, c.y_range->n};
  if (!c.phase.empty()) j["phase"] = c.phase;
  return j;
}

int cmd_point(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_format(c);
  if (!c.x) throw InvalidParameter("x", "point needs --x (log10 kappa)");
  if (!c.y) throw InvalidParameter("y", "point needs --y (l*mu - omega)");
  const SweepModel model = sweep_model(c);
  if (!model.valid_y(*c.y)) throw InvalidParameter("y", "omega = l*mu - y must be > 0 and Omega >= 0");
  const ClassifyOptions options = classify_options(c);
  const int base = options.resolved_base(c.l);
  if (base < c.l + 2) {
    throw InvalidParameter("n_max", "must be at least l + 2 = " + std::to_string(c.l + 2) + ", got " +
                                        std::to_string(base));
  }
  GridCell cell = evaluate_cell(model, *c.x, *c.y, options);
  const PhasePoint& p = cell.point;
  const std::string token = phase_token(cell);
  emit(c, out, [&](std::ostream& os) {
    if (c.format == "json") {
      nlohmann::json j{{"spec", to_json(c)},
                       {"x_log10_kappa", p.x},
                       {"y_lmu_minus_omega", p.y},
                       {"psi", p.psi_star},
                       {"energy", p.energy},
                       {"L_expect", p.l_expect},
                       {"phase", token},
                       {"n_max", p.n_max_used},
                       {"converged", p.converged}};
      if (p.report) j["convergence"] = jchm::to_json(*p.report);
      if (!cell.message.empty()) j["message"] = cell.message;
      os << j.dump(2) << '\n';
      return;
    }
    os << "x_log10_kappa " << fmt(p.x) << '\n'
       << "y_lmu_minus_omega " << fmt(p.y) << '\n'
       << "psi " << fmt(p.psi_star) << '\n'
       << "energy " << fmt(p.energy) << '\n'
       << "L_expect " << fmt(p.l_expect) << '\n'
       << "phase " << token << '\n'
       << "n_max " << p.n_max_used << '\n'
       << "converged " << (p.converged ? 1 : 0) << '\n';
    if (p.report) {
      const auto& r = *p.report;
      for (std::size_t k = 0; k < r.n_max_sequence.size(); ++k) {
        os << "probe n_max=" << r.n_max_sequence[k] << " energy=" << fmt(r.energies[k])
           << " L_expect=" << fmt(r.l_expects[k]) << '\n';
      }
      os << "probe converged=" << r.converged << " pinned=" << r.pinned_at_truncation
         << " tracking=" << r.tracking_truncation << '\n';
    }
  });
  if (cell.status == CellStatus::Indeterminate) {
    err << "indeterminate: " << cell.message << '\n';
    return 2;
  }
  return 0;
}

int cmd_diagram(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_format(c);
  const GridSpec spec = grid_spec(c);
  const PhaseGrid grid = run_grid(spec, classify_options(c), c.jobs);
  emit(c, out, [&](std::ostream& os) {
    if (c.format == "json") {
      nlohmann::json echo = to_json(c);
      echo["grid"] = jchm::to_json(spec);
      os << grid_to_json(grid, echo).dump() << '\n';
    } else {
      write_grid_csv(os, grid);
    }
  });
  std::size_t bad = 0;
  for (const GridCell& cell : grid.cells) bad += cell.status != CellStatus::Classified;
  if (bad > 0) {
    err << bad << " of " << grid.cells.size() << " cells are INVALID or INDET\n";
    return 2;
  }
  return 0;
}

int cmd_boundary(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_format(c);
  const SweepModel model = sweep_model(c);
  const ClassifyOptions options = classify_options(c);
  Axis axis;
  double fixed;
  std::pair<double, double> bracket;
  if (c.y && !c.x) {
    axis = Axis::X;
    fixed = *c.y;
    bracket = c.x_range ? std::pair{c.x_range->lo, c.x_range->hi} : std::pair{-4.0, -0.2};
  } else if (c.x && !c.y) {
    axis = Axis::Y;
    fixed = *c.x;
    const GridSpec d = GridSpec::defaults_for(c.l);
    bracket = c.y_range ? std::pair{c.y_range->lo, c.y_range->hi} : std::pair{d.y_lo, d.y_hi};
  } else {
    throw InvalidParameter("x", "boundary needs exactly one of --x (refine in y) or --y (refine in x)");
  }
  auto cell_at = [&](double t) {
    return axis == Axis::X ? evaluate_cell(model, t, fixed, options) : evaluate_cell(model, fixed, t, options);
  };
  const std::string lo_token = c.phase.empty() ? phase_token(cell_at(bracket.first)) : c.phase;
  const double at = refine_boundary(model, axis, fixed, bracket, token_is(lo_token), options);
  const std::string below = phase_token(cell_at(at - 1e-3));
  const std::string above = phase_token(cell_at(at + 1e-3));
  emit(c, out, [&](std::ostream& os) {
    if (c.format == "json") {
      os << nlohmann::json{{"spec", to_json(c)},
                           {"axis", axis == Axis::X ? "x" : "y"},
                           {"fixed", fixed},
                           {"boundary", at},
                           {"below", below},
                           {"above", above}}
                .dump(2)
         << '\n';
    } else {
      os << "axis,fixed,boundary,below,above\n"
         << (axis == Axis::X ? "x" : "y") << ',' << fmt(fixed) << ',' << fmt(at) << ',' << below << ',' << above
         << '\n';
    }
  });
  (void)err;
  return 0;
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_format(c);
  if (!c.y) throw InvalidParameter("y", "scan needs --y (l*mu - omega)");
  const SweepModel model = sweep_model(c);
  const Range r = c.x_range.value_or(Range{-4.0, -0.2, 81});
  const int n = r.n > 0 ? r.n : 81;
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) xs[static_cast<std::size_t>(k)] = n == 1 ? r.lo : r.lo + (r.hi - r.lo) * k / (n - 1);
  const auto scan = energy_scan(model, *c.y, xs, classify_options(c), c.jobs);
  const auto slopes = scan_slopes(scan);
  bool failed = false;
  emit(c, out, [&](std::ostream& os) {
    if (c.format == "json") {
      nlohmann::json cols{{"x_log10_kappa", nlohmann::json::array()},
                          {"energy", nlohmann::json::array()},
                          {"psi", nlohmann::json::array()},
                          {"L_expect", nlohmann::json::array()},
                          {"dE_dx", nlohmann::json::array()}};
      for (std::size_t k = 0; k < scan.size(); ++k) {
        cols["x_log10_kappa"].push_back(scan[k].x);
        cols["energy"].push_back(scan[k].energy);
        cols["psi"].push_back(scan[k].psi_star);
        cols["L_expect"].push_back(scan[k].l_expect);
        cols["dE_dx"].push_back(slopes[k]);
      }
      os << nlohmann::json{{"spec", to_json(c)}, {"columns", cols}}.dump() << '\n';
    } else {
      os << "x_log10_kappa,energy,psi,L_expect,dE_dx\n";
      for (std::size_t k = 0; k < scan.size(); ++k) {
        os << fmt(scan[k].x) << ',' << fmt(scan[k].energy) << ',' << fmt(scan[k].psi_star) << ','
           << fmt(scan[k].l_expect) << ',' << fmt(slopes[k]) << '\n';
      }
    }
  });
  for (const auto& p : scan) {
    if (p.error) {
      err << "x=" << p.x << ": " << *p.error << '\n';
      failed = true;
    }
  }
  return failed ? 2 : 0;
}

int cmd_analytic(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_format(c);
  if (c.l < 1 || c.l > 4) throw InvalidParameter("l", "photon order must lie in 1..4");
  struct Row {
    std::string quantity;
    int L1 = -1;
    int L2 = -1;
    std::string side;
    double kappa = NAN;
    double omega = NAN;
    std::string value;
  };
  std::vector<Row> rows;
  const int l = c.l;
  for (int L = l; L <= l + 2; ++L) {
    try {
      const double w = solve_sector_zero(l, L);
      rows.push_back({"sector_zero", L, -1, "", NAN, w, fmt(lmu_minus_omega(l, w))});
    } catch (const BracketError&) {
      rows.push_back({"sector_zero", L, -1, "", NAN, NAN, "none"});
    }
  }
  std::vector<std::pair<int, int>> pairs{{0, l}};
  for (int L = l; L <= l + 2; ++L) pairs.emplace_back(L, L + 1);
  for (auto [a, b] : pairs) {
    try {
      const double w = solve_sector_crossing(l, a, b);
      rows.push_back({"sector_crossing", a, b, "", NAN, w, fmt(lmu_minus_omega(l, w))});
    } catch (const BracketError&) {
      rows.push_back({"sector_crossing", a, b, "", NAN, NAN, "none"});
    }
  }
  const AsymptoticSlope slope = asymptotic_slope(l, 1.0);
  rows.push_back({"asymptotic", -1, -1, "", NAN, NAN,
                  slope.unbounded ? "Unbounded" : (l == 1 ? "omega-1" : "omega-2")});
  if (l == 1) {
    const Range r = c.x_range.value_or(Range{-4.0, -0.2, 20});
    const int n = r.n > 0 ? r.n : 20;
    std::vector<double> kappas{0.0};
    for (int k = 0; k < n; ++k) kappas.push_back(std::pow(10.0, n == 1 ? r.lo : r.lo + (r.hi - r.lo) * k / (n - 1)));
    const std::vector<std::pair<int, Side>> curves{
        {0, Side::Upper}, {1, Side::Lower}, {1, Side::Upper}, {2, Side::Lower}, {2, Side::Upper}};
    for (auto [L, side] : curves) {
      for (double kappa : kappas) {
        rows.push_back({"strong_coupling", L, -1, side == Side::Upper ? "upper" : "lower", kappa, NAN,
                        fmt(strong_coupling_boundary(L, side, kappa))});
      }
    }
  }
  emit(c, out, [&](std::ostream& os) {
    auto opt_int = [](int v) { return v < 0 ? std::string() : std::to_string(v); };
    auto opt_dbl = [](double v) { return std::isnan(v) ? std::string() : fmt(v); };
    if (c.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const Row& row : rows) {
        arr.push_back({{"quantity", row.quantity}, {"L", opt_int(row.L1)}, {"L2", opt_int(row.L2)},
                       {"side", row.side}, {"kappa", opt_dbl(row.kappa)}, {"omega", opt_dbl(row.omega)},
                       {"value", row.value}});
      }
      os << nlohmann::json{{"spec", to_json(c)}, {"rows", arr}}.dump(2) << '\n';
      return;
    }
    os << "quantity,l,L,L2,side,kappa,omega,value\n";
    for (const Row& row : rows) {
      os << row.quantity << ',' << l << ',' << opt_int(row.L1) << ',' << opt_int(row.L2) << ',' << row.side << ','
         << opt_dbl(row.kappa) << ',' << opt_dbl(row.omega) << ',' << row.value << '\n';
    }
  });
  (void)err;
  return 0;
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  AcceptanceOptions options;
  options.classify = classify_options(c);
  options.jobs = c.jobs;
  if (c.x_range && c.x_range->n > 0) options.census_nx = c.x_range->n;
  if (c.y_range && c.y_range->n > 0) options.census_ny = c.y_range->n;
  options.only = c.only;
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!c.only.empty() && std::find(c.only.begin(), c.only.end(), id) == c.only.end()) continue;
    results.push_back(run_criterion(id, options));
    err << format_result(results.back()) << std::flush;
  }
  nlohmann::json report = jchm::to_json(results);
  report["spec"] = to_json(c);
  emit(c, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
  return report["passed"].get<bool>() ? 0 : 3;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-field phase diagrams of the multiphoton Jaynes-Cummings-Hubbard model", "jchm"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  c.jobs = default_jobs();
  double x = 0, y = 0;
  std::string x_range, y_range;
  app.add_option("--l", c.l, "photon order of the coupling (1..4)")->capture_default_str();
  app.add_option("--z", c.z, "nearest-neighbour count")->capture_default_str();
  app.add_option("--mu", c.mu, "chemical potential mu/beta")->capture_default_str();
  app.add_option("--delta", c.delta, "detuning (omega - Omega)/beta")->capture_default_str();
  auto* x_opt = app.add_option("--x", x, "log10(kappa/beta) of a single point");
  auto* y_opt = app.add_option("--y", y, "(l*mu - omega)/beta of a single point");
  auto* xr_opt = app.add_option("--x-range", x_range, "lo:hi:n along log10(kappa/beta)");
  auto* yr_opt = app.add_option("--y-range", y_range, "lo:hi:n along (l*mu - omega)/beta");
  app.add_option("--n-max", c.n_max, "base Fock truncation (default 40 for l<=2, 24 otherwise)");
  auto* psi_max_opt = app.add_option("--psi-max", "psi search bracket end (default sqrt(n_max)/2)");
  auto* psi_eps_opt = app.add_option("--psi-eps", "psi below which the order parameter is zero (default 1e-3)");
  app.add_option("--tol", c.tol, "eigensolver residual tolerance")->capture_default_str();
  app.add_option("--tol-conv", c.tol_conv, "truncation convergence tolerance on the energy")->capture_default_str();
  app.add_option("--pin-fraction", c.pin_fraction, "<L> >= fraction * n_max counts as pinned")->capture_default_str();
  app.add_option("--jobs", c.jobs, "worker threads (env JCHM_JOBS)");
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--format", c.format, "csv or json")->capture_default_str();
  app.add_option("--phase", c.phase, "boundary: phase token on the lower bracket side");
  app.add_option("--only", c.only, "validate: criterion ids to run")->delimiter(',');

  auto* point = app.add_subcommand("point", "classify a single parameter point");
  auto* diagram = app.add_subcommand("diagram", "classify a 2D grid");
  auto* boundary = app.add_subcommand("boundary", "bisect a phase boundary along one axis");
  auto* scan = app.add_subcommand("scan", "minimum energy along the kappa axis");
  auto* analytic = app.add_subcommand("analytic", "closed-form sector roots and strong-coupling curves");
  auto* validate = app.add_subcommand("validate", "run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*x_opt) c.x = x;
    if (*y_opt) c.y = y;
    if (*xr_opt) c.x_range = parse_range(x_range, "x-range");
    if (*yr_opt) c.y_range = parse_range(y_range, "y-range");
    if (*psi_max_opt) c.psi_max = psi_max_opt->as<double>();
    if (*psi_eps_opt) c.psi_eps = psi_eps_opt->as<double>();
    if (c.jobs < 1) throw InvalidParameter("jobs", "must be >= 1");
    if (c.n_max < 0) throw InvalidParameter("n_max", "must be >= 0");
    if (*point) {
      c.command = Command::Point;
      return cmd_point(c, out, err);
    }
    if (*diagram) {
      c.command = Command::Diagram;
      return cmd_diagram(c, out, err);
    }
    if (*boundary) {
      c.command = Command::Boundary;
      return cmd_boundary(c, out, err);
    }
    if (*scan) {
      c.command = Command::Scan;
      return cmd_scan(c, out, err);
    }
    if (*analytic) {
      c.command = Command::Analytic;
      return cmd_analytic(c, out, err);
    }
    c.command = Command::Validate;
    (void)validate;
    return cmd_validate(c, out, err);
  } catch (const InvalidParameter& e) {
    err << "error: invalid parameter " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace jchm::cli
