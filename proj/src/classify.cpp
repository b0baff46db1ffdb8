#include "jchm/classify.hpp"

#include <algorithm>
#include <cmath>

#include "jchm/error.hpp"

namespace jchm {

std::string to_token(const PhaseLabel& label) {
  switch (label.kind) {
    case PhaseKind::MottInsulator:
      return "MI:" + std::to_string(label.L.value_or(-1));
    case PhaseKind::Superfluid:
      return "SF";
    case PhaseKind::Forbidden:
      return "FORBIDDEN";
  }
  return "?";
}

int default_base_n_max(int l) { return l <= 2 ? 40 : 24; }

int ClassifyOptions::resolved_base(int l) const { return base_n_max > 0 ? base_n_max : default_base_n_max(l); }

PsiSearchSpec ClassifyOptions::psi_spec(int n_max) const {
  PsiSearchSpec spec = PsiSearchSpec::defaults_for(n_max);
  if (psi_max) spec.psi_max = *psi_max;
  if (psi_zero_eps) spec.psi_zero_eps = *psi_zero_eps;
  spec.eig_tol = eig_tol;
  return spec;
}

std::vector<int> ClassifyOptions::resolved_schedule(int l) const {
  if (!schedule.empty()) return schedule;
  const int base = resolved_base(l);
  return {base, 2 * base};
}

ConvergenceReport convergence_probe(const ModelParams& params, const std::vector<int>& schedule,
                                    const ProbePolicy& policy, double eig_tol) {
  if (schedule.size() < 2) throw InvalidParameter("schedule", "needs at least two truncation levels");
  if (!std::is_sorted(schedule.begin(), schedule.end(), std::less_equal<>{})) {
    throw InvalidParameter("schedule", "truncation levels must be strictly increasing");
  }
  params.validate();
  ConvergenceReport report;
  for (int n_max : schedule) {
    const HilbertSpace space = build_space(params.l, n_max);
    const EigPair ground = smallest_eigpair(build_mean_field(params, 0.0, space), eig_tol);
    report.n_max_sequence.push_back(n_max);
    report.energies.push_back(ground.value);
    report.l_expects.push_back(expected_L(ground.vector, space));
  }
  const std::size_t last = schedule.size() - 1;
  const double dE = report.energies[last] - report.energies[last - 1];
  const double dL = report.l_expects[last] - report.l_expects[last - 1];
  const double dn = schedule[last] - schedule[last - 1];
  report.converged = std::abs(dE) < policy.tol_conv && std::abs(dL) < 0.01;
  report.pinned_at_truncation = report.l_expects[last] >= policy.pin_fraction * schedule[last];
  report.tracking_truncation = dE < -policy.tol_conv && dL >= policy.pin_fraction * dn;
  return report;
}

PhasePoint classify_point(const ModelParams& params, int base_n_max, const PsiSearchSpec& spec,
                          const ProbePolicy& policy, std::vector<int> schedule) {
  params.validate();
  if (base_n_max < params.l + 2) {
    throw InvalidParameter("n_max", "base truncation must be at least l + 2 = " + std::to_string(params.l + 2));
  }
  PhasePoint point;
  point.x = std::log10(params.kappa);
  point.y = params.l * params.mu - params.omega;

  const HilbertSpace base = build_space(params.l, base_n_max);
  const MeanFieldSolution sol = minimize_over_psi(params, base, spec);
  point.psi_star = sol.psi_star;
  point.energy = sol.energy;
  point.l_expect = sol.l_expect;
  point.n_max_used = base_n_max;

  if (sol.psi_star > spec.psi_zero_eps) {
    point.label = PhaseLabel::superfluid();
    point.converged = !sol.bracket_exhausted;
    return point;
  }

  if (schedule.empty()) schedule = {base_n_max, 2 * base_n_max};
  ConvergenceReport report = convergence_probe(params, schedule, policy, spec.eig_tol);
  point.energy = report.energies.back();
  point.l_expect = report.l_expects.back();
  point.n_max_used = report.n_max_sequence.back();
  point.converged = report.converged;

  if (report.converged && !report.pinned_at_truncation) {
    const double nearest = std::round(point.l_expect);
    if (std::abs(point.l_expect - nearest) > policy.integrality_tol) {
      throw IndeterminateError("degenerate ground manifold: <L> = " + std::to_string(point.l_expect),
                               std::move(report));
    }
    point.label = PhaseLabel::mott(static_cast<int>(nearest));
  } else if (report.pinned_at_truncation || report.tracking_truncation) {
    point.label = PhaseLabel::forbidden();
  } else {
    throw IndeterminateError("truncation probe neither converged nor diverging", std::move(report));
  }
  point.report = std::move(report);
  return point;
}

PhasePoint classify_point(const ModelParams& params, const ClassifyOptions& options) {
  const int base = options.resolved_base(params.l);
  return classify_point(params, base, options.psi_spec(base), options.probe, options.resolved_schedule(params.l));
}

}  // namespace jchm
