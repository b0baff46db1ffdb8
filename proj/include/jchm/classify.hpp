#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jchm/groundstate.hpp"
#include "jchm/operators.hpp"

namespace jchm {

enum class PhaseKind { MottInsulator, Superfluid, Forbidden };

struct PhaseLabel {
  PhaseKind kind = PhaseKind::Superfluid;
  std::optional<int> L;  // set iff kind == MottInsulator

  static PhaseLabel mott(int L) { return {PhaseKind::MottInsulator, L}; }
  static PhaseLabel superfluid() { return {PhaseKind::Superfluid, std::nullopt}; }
  static PhaseLabel forbidden() { return {PhaseKind::Forbidden, std::nullopt}; }

  friend bool operator==(const PhaseLabel&, const PhaseLabel&) = default;
};

/// "MI:<L>", "SF" or "FORBIDDEN".
std::string to_token(const PhaseLabel& label);

/// psi = 0 ground energies and <L> along an increasing truncation schedule.
struct ConvergenceReport {
  std::vector<int> n_max_sequence;
  std::vector<double> energies;
  std::vector<double> l_expects;
  bool converged = false;
  bool pinned_at_truncation = false;
  /// <L> grew with the truncation at (at least) pin_fraction per added level.
  bool tracking_truncation = false;
};

struct ProbePolicy {
  double tol_conv = 1e-8;
  double pin_fraction = 0.8;
  /// |<L> - round(<L>)| above this marks a degenerate ground manifold.
  double integrality_tol = 1e-3;
};

/// The classification could not be resolved; carries the probe evidence.
class IndeterminateError : public std::runtime_error {
 public:
  IndeterminateError(const std::string& why, ConvergenceReport report)
      : std::runtime_error(why), report_(std::move(report)) {}
  const ConvergenceReport& report() const noexcept { return report_; }

 private:
  ConvergenceReport report_;
};

ConvergenceReport convergence_probe(const ModelParams& params, const std::vector<int>& schedule,
                                    const ProbePolicy& policy = {}, double eig_tol = kDefaultEigTol);

/// 40 for l <= 2, 24 for l in {3, 4}.
int default_base_n_max(int l);

/// Full numeric policy for one classification.
struct ClassifyOptions {
  int base_n_max = 0;  // 0: default_base_n_max(l)
  std::optional<double> psi_max;
  std::optional<double> psi_zero_eps;
  double eig_tol = kDefaultEigTol;
  ProbePolicy probe;
  std::vector<int> schedule;  // empty: {base, 2*base}

  int resolved_base(int l) const;
  PsiSearchSpec psi_spec(int n_max) const;
  std::vector<int> resolved_schedule(int l) const;
};

struct PhasePoint {
  double x = 0.0;  // log10(kappa)
  double y = 0.0;  // l*mu - omega
  double psi_star = 0.0;
  double energy = 0.0;
  double l_expect = 0.0;
  PhaseLabel label;
  int n_max_used = 0;
  /// MI/forbidden: probe converged. Superfluid: psi minimum interior to the bracket.
  bool converged = false;
  std::optional<ConvergenceReport> report;
};

/// Superfluid if psi* > psi_zero_eps at the base truncation; otherwise the
/// psi = 0 truncation probe decides between MI(L) and forbidden.
/// Throws IndeterminateError when neither applies.
PhasePoint classify_point(const ModelParams& params, int base_n_max, const PsiSearchSpec& spec,
                          const ProbePolicy& policy = {}, std::vector<int> schedule = {});

PhasePoint classify_point(const ModelParams& params, const ClassifyOptions& options = {});

}  // namespace jchm
