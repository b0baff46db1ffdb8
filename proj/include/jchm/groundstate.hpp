#pragma once

#include <span>
#include <vector>

#include "jchm/eigensolver.hpp"
#include "jchm/hilbert.hpp"
#include "jchm/operators.hpp"

namespace jchm {

/// Scan policy for the order parameter psi >= 0.
struct PsiSearchSpec {
  double psi_max = 1.0;
  int coarse_steps = 64;
  double refine_tol = 1e-6;
  double psi_zero_eps = 1e-3;
  double energy_tie_eps = 1e-9;
  double eig_tol = kDefaultEigTol;

  /// psi_max = sqrt(n_max)/2 keeps psi^2 well inside the Fock truncation.
  static PsiSearchSpec defaults_for(int n_max);

  void validate() const;
};

struct MeanFieldSolution {
  double psi_star = 0.0;
  double energy = 0.0;
  std::vector<double> ground_vector;
  double l_expect = 0.0;
  int n_max_used = 0;
  /// The best coarse point sat at psi_max: the true minimiser may lie beyond
  /// the search bracket.
  bool bracket_exhausted = false;
};

double energy_at_psi(const ModelParams& params, double psi, const HilbertSpace& space,
                     double tol = kDefaultEigTol);

/// Coarse scan of E(psi) on [0, psi_max], golden-section refinement of every
/// coarse local minimum, global best wins. psi_star snaps to 0 when the
/// refined minimiser is below psi_zero_eps and E(0) is within energy_tie_eps.
MeanFieldSolution minimize_over_psi(const ModelParams& params, const HilbertSpace& space,
                                    const PsiSearchSpec& spec);

/// <L> = sum_i v_i^2 L_i
double expected_L(std::span<const double> vector, const HilbertSpace& space);

}  // namespace jchm
