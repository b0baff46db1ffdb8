#pragma once

#include <optional>

namespace jchm {

/// Fixed-L block spanned by {|g,L>, |e,L-l>} of the psi = 0 Hamiltonian.
struct SectorSpec {
  int l = 1;
  int L = 1;
  double omega = 1.0;
  double Omega = 1.0;
  double mu = 1.0;

  void validate() const;
};

enum class Branch { Plus, Minus };

/// sqrt(L!/(L-l)!) as a running product.
double sector_coupling(int l, int L);

/// Eigenvalue of the 2x2 block
///   [[Omega + (L-l) omega - L mu, c], [c, L omega - L mu]],  c = sqrt(L!/(L-l)!).
double sector_energy(const SectorSpec& spec, Branch branch);

/// Resonant (Omega = omega), mu = 1 closed form
///   (1/2)[-2L + (2L-l+1) omega +- sqrt(4 L!/(L-l)! + (l-1)^2 omega^2)].
double sector_energy_resonant(int l, int L, double omega, Branch branch);

/// Lowest energy inside the fixed-L subspace of the untruncated model. For
/// L < l the subspace is the single state |g,L> with energy L (omega - mu).
double sector_ground_energy(int l, int L, double omega, double Omega, double mu);

/// argmin over L in [0, L_max] of sector_ground_energy; lowest L on ties.
int lowest_sector(int l, double omega, double Omega, double mu, int L_max);

inline constexpr double kRootBracketLo = 1e-6;
inline constexpr double kRootBracketHi = 10.0;
inline constexpr double kRootTol = 1e-10;

/// omega at which the Minus branch of sector (l, L) crosses zero
/// (mu = 1, zero detuning). Bisection on (1e-6, 10].
double solve_sector_zero(int l, int L);

/// omega at which the ground energies of sectors L1 < L2 coincide
/// (mu = 1, zero detuning). Sectors with L < l are the 1x1 states |g,L>.
double solve_sector_crossing(int l, int L1, int L2);

/// Large-L behaviour of the Minus branch at mu = 1, zero detuning.
/// l = 1, 2: E_L ~ slope * L. l = 3, 4: E_L ~ normalized_limit * L^exponent.
struct AsymptoticSlope {
  bool unbounded = false;
  double slope = 0.0;
  double exponent = 1.0;
  double normalized_limit = 0.0;
};

AsymptoticSlope asymptotic_slope(int l, double omega);

enum class Side { Upper, Lower };

/// Strong-coupling lobe boundary (mu_L^+- - omega)/beta of the single-photon
/// model. Upper is defined for L in {0,1,2}, Lower for L in {1,2}; kappa is the
/// dimensionless hopping kappa/beta.
double strong_coupling_boundary(int L, Side side, double kappa);

/// y = l*mu - omega for mu = 1.
inline double lmu_minus_omega(int l, double omega, double mu = 1.0) { return l * mu - omega; }

}  // namespace jchm
