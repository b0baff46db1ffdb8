#include "jchm/eigensolver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jchm/error.hpp"

namespace jchm {
namespace {

double norm2(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

void normalise(std::vector<double>& v) {
  const double n = norm2(v);
  for (double& x : v) x /= n;
}

// Largest-magnitude component positive; the first index within rounding of
// the maximum wins ties.
void fix_sign(std::vector<double>& v) {
  double max_abs = 0.0;
  for (double x : v) max_abs = std::max(max_abs, std::abs(x));
  const double cutoff = max_abs - 1e-12 * std::max(1.0, max_abs);
  for (double x : v) {
    if (std::abs(x) >= cutoff) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw InvalidParameter("tol", "must be > 0");
}

struct BandCopy {
  std::vector<double> ab;
  lapack_int n;
  lapack_int kd;
  lapack_int ldab;
};

BandCopy band_copy(const SymmetricMatrix& a) {
  const auto s = a.band_storage();
  return {std::vector<double>(s.begin(), s.end()), static_cast<lapack_int>(a.dim()),
          static_cast<lapack_int>(a.bandwidth()), static_cast<lapack_int>(a.leading_dimension())};
}

// Lowest eigenpair of a symmetric tridiagonal matrix (diag d, off-diag e).
std::pair<double, std::vector<double>> tridiagonal_lowest(std::vector<double> d, std::vector<double> e) {
  const auto n = static_cast<lapack_int>(d.size());
  lapack_int found = 0;
  double w = 0.0;
  std::vector<double> z(d.size());
  std::vector<lapack_int> ifail(d.size());
  if (e.empty()) e.push_back(0.0);
  const lapack_int info =
      LAPACKE_dstevx(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, 1,
                     2 * LAPACKE_dlamch('S'), &found, &w, z.data(), n, ifail.data());
  if (info != 0 || found != 1) {
    throw NonConvergence("dstevx failed with info=" + std::to_string(info));
  }
  return {w, z};
}

}  // namespace

double residual_norm(const SymmetricMatrix& a, const EigPair& pair) {
  std::vector<double> av(a.dim());
  a.multiply(pair.vector, av);
  double sum = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    const double r = av[i] - pair.value * pair.vector[i];
    sum += r * r;
  }
  return std::sqrt(sum);
}

EigPair direct_smallest(const SymmetricMatrix& a, double tol) {
  check_tol(tol);
  auto band = band_copy(a);
  const auto n = band.n;
  std::vector<double> q(static_cast<std::size_t>(n) * n);
  std::vector<double> z(static_cast<std::size_t>(n));
  std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
  lapack_int found = 0;
  double w = 0.0;
  const lapack_int info = LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, band.kd, band.ab.data(),
                                         band.ldab, q.data(), n, 0.0, 0.0, 1, 1,
                                         2 * LAPACKE_dlamch('S'), &found, &w, z.data(), n, ifail.data());
  if (info != 0 || found != 1) {
    throw NonConvergence("dsbevx failed with info=" + std::to_string(info));
  }
  EigPair pair{w, std::move(z)};
  normalise(pair.vector);
  fix_sign(pair.vector);
  if (residual_norm(a, pair) > tol * std::max(1.0, std::abs(pair.value))) {
    throw NonConvergence("direct solver residual exceeds tolerance");
  }
  return pair;
}

EigPair lanczos_smallest(const SymmetricMatrix& a, double tol, std::size_t krylov_dim,
                         std::size_t max_restarts) {
  check_tol(tol);
  const std::size_t n = a.dim();
  if (n == 0) throw InvalidParameter("dim", "empty matrix");
  const std::size_t m = std::max<std::size_t>(2, std::min(krylov_dim, n));

  // Deterministic start vector with support on every basis state.
  std::vector<double> start(n);
  for (std::size_t i = 0; i < n; ++i) start[i] = 1.0 + 0.25 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  normalise(start);

  std::vector<std::vector<double>> basis;
  std::vector<double> w(n);
  EigPair best{0.0, start};
  for (std::size_t restart = 0; restart < max_restarts; ++restart) {
    basis.assign(1, best.vector);
    std::vector<double> alpha;
    std::vector<double> beta;
    for (std::size_t k = 0; k < m; ++k) {
      a.multiply(basis[k], w);
      alpha.push_back(std::inner_product(w.begin(), w.end(), basis[k].begin(), 0.0));
      // Full reorthogonalisation, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          const double c = std::inner_product(w.begin(), w.end(), b.begin(), 0.0);
          for (std::size_t i = 0; i < n; ++i) w[i] -= c * b[i];
        }
      }
      const double b_next = norm2(w);
      if (k + 1 == m || b_next < 1e-14 * std::max(1.0, std::abs(alpha.back()))) break;
      beta.push_back(b_next);
      for (double& x : w) x /= b_next;
      basis.push_back(w);
    }
    auto [theta, y] = tridiagonal_lowest(alpha, beta);
    std::vector<double> ritz(n, 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      for (std::size_t i = 0; i < n; ++i) ritz[i] += y[k] * basis[k][i];
    }
    normalise(ritz);
    best = {theta, std::move(ritz)};
    // Rayleigh quotient of the normalised Ritz vector.
    a.multiply(best.vector, w);
    best.value = std::inner_product(w.begin(), w.end(), best.vector.begin(), 0.0);
    if (residual_norm(a, best) <= tol * std::max(1.0, std::abs(best.value))) {
      fix_sign(best.vector);
      return best;
    }
  }
  throw NonConvergence("Lanczos did not reach the residual bound after " +
                       std::to_string(max_restarts) + " restarts");
}

EigPair smallest_eigpair(const SymmetricMatrix& a, double tol) {
  if (a.dim() <= kDirectSolverMaxDim) return direct_smallest(a, tol);
  return lanczos_smallest(a, tol);
}

double smallest_eigenvalue(const SymmetricMatrix& a, double tol) {
  check_tol(tol);
  if (a.dim() > kDirectSolverMaxDim) return lanczos_smallest(a, tol).value;
  auto band = band_copy(a);
  std::vector<double> w(static_cast<std::size_t>(band.n));
  lapack_int found = 0;
  std::vector<lapack_int> ifail(static_cast<std::size_t>(band.n));
  double z = 0.0;
  const lapack_int info =
      LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'I', 'L', band.n, band.kd, band.ab.data(), band.ldab, nullptr,
                     1, 0.0, 0.0, 1, 1, 2 * LAPACKE_dlamch('S'), &found, w.data(), &z, 1, ifail.data());
  if (info != 0 || found != 1) {
    throw NonConvergence("dsbevx failed with info=" + std::to_string(info));
  }
  return w[0];
}

}  // namespace jchm
