#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jchm/hilbert.hpp"

namespace jchm {

/// Model parameters in units of the atom-photon coupling (hbar*beta = 1).
struct ModelParams {
  int l = 1;
  double omega = 1.0;  // photon frequency
  double Omega = 1.0;  // atomic transition frequency
  double mu = 1.0;     // chemical potential
  double kappa = 0.0;  // inter-cavity hopping
  int z = 2;           // nearest-neighbour count

  double detuning() const noexcept { return omega - Omega; }

  /// Throws InvalidParameter naming the first field out of its domain.
  void validate() const;

  /// Parameters for a phase-diagram point: x = log10(kappa), y = l*mu - omega,
  /// Omega = omega - delta.
  static ModelParams from_axes(int l, int z, double mu, double delta, double x, double y);
};

/// Real symmetric band matrix. Only the lower band is stored (LAPACK 'L' band
/// layout, column major, leading dimension bandwidth+1); entry(i, j) and
/// entry(j, i) read the same storage cell.
class SymmetricMatrix {
 public:
  SymmetricMatrix(std::size_t dim, std::size_t bandwidth);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t bandwidth() const noexcept { return kd_; }

  double operator()(std::size_t i, std::size_t j) const noexcept;
  void set(std::size_t i, std::size_t j, double value);
  void add(std::size_t i, std::size_t j, double value);

  std::span<const double> band_storage() const noexcept { return band_; }
  std::size_t leading_dimension() const noexcept { return kd_ + 1; }

  /// Row-major dense copy.
  std::vector<double> to_dense() const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  double& cell(std::size_t i, std::size_t j);

  std::size_t dim_;
  std::size_t kd_;
  std::vector<double> band_;
};

/// sqrt((n+l)!/n!) evaluated as a running product.
double coupling_element(int n, int l);

/// On-site multiphoton Jaynes-Cummings Hamiltonian
/// Omega sigma_+ sigma_- + omega a^dag a + sigma_+ a^l + sigma_- (a^dag)^l.
SymmetricMatrix build_mpjc(const ModelParams& params, const HilbertSpace& space);

/// Decoupled single-site Hamiltonian
/// H_mpJC - z kappa psi (a^dag + a) + z kappa psi^2 - mu L.
/// Nothing is linearised: a^dag a and the l-photon coupling enter exactly.
SymmetricMatrix build_mean_field(const ModelParams& params, double psi, const HilbertSpace& space);

std::vector<double> build_l_diag(const HilbertSpace& space);

}  // namespace jchm
