#include "jchm/analytic.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "jchm/error.hpp"

namespace jchm {

void SectorSpec::validate() const {
  if (l < 1 || l > 4) throw InvalidParameter("l", "photon order must lie in 1..4");
  if (L < l) throw InvalidParameter("L", "sector needs L >= l, got L=" + std::to_string(L));
}

double sector_coupling(int l, int L) {
  double prod = 1.0;
  for (int k = L - l + 1; k <= L; ++k) prod *= k;
  return std::sqrt(prod);
}

double sector_energy(const SectorSpec& spec, Branch branch) {
  spec.validate();
  const double a = spec.Omega + (spec.L - spec.l) * spec.omega - spec.L * spec.mu;
  const double d = spec.L * spec.omega - spec.L * spec.mu;
  const double c = sector_coupling(spec.l, spec.L);
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), c);
  return branch == Branch::Minus ? mean - radius : mean + radius;
}

double sector_energy_resonant(int l, int L, double omega, Branch branch) {
  SectorSpec{l, L, omega, omega, 1.0}.validate();
  const double c = sector_coupling(l, L);
  const double root = std::sqrt(4.0 * c * c + (l - 1) * (l - 1) * omega * omega);
  const double base = -2.0 * L + (2.0 * L - l + 1) * omega;
  return 0.5 * (branch == Branch::Minus ? base - root : base + root);
}

double sector_ground_energy(int l, int L, double omega, double Omega, double mu) {
  if (L < 0) throw InvalidParameter("L", "must be >= 0");
  if (L < l) return L * (omega - mu);
  return sector_energy({l, L, omega, Omega, mu}, Branch::Minus);
}

int lowest_sector(int l, double omega, double Omega, double mu, int L_max) {
  int best = 0;
  double best_e = sector_ground_energy(l, 0, omega, Omega, mu);
  for (int L = 1; L <= L_max; ++L) {
    const double e = sector_ground_energy(l, L, omega, Omega, mu);
    if (e < best_e) {
      best_e = e;
      best = L;
    }
  }
  return best;
}

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi, const std::string& what) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw BracketError(what + ": no sign change in bracket");
  while (hi - lo > kRootTol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double solve_sector_zero(int l, int L) {
  SectorSpec{l, L, 1.0, 1.0, 1.0}.validate();
  return bisect([&](double w) { return sector_energy({l, L, w, w, 1.0}, Branch::Minus); }, kRootBracketLo,
                kRootBracketHi, "sector zero (l=" + std::to_string(l) + ", L=" + std::to_string(L) + ")");
}

double solve_sector_crossing(int l, int L1, int L2) {
  if (l < 1 || l > 4) throw InvalidParameter("l", "photon order must lie in 1..4");
  if (L1 < 0 || L2 <= L1) throw InvalidParameter("L2", "need 0 <= L1 < L2");
  return bisect(
      [&](double w) { return sector_ground_energy(l, L1, w, w, 1.0) - sector_ground_energy(l, L2, w, w, 1.0); },
      kRootBracketLo, kRootBracketHi, "sector crossing");
}

AsymptoticSlope asymptotic_slope(int l, double omega) {
  switch (l) {
    case 1:
      // Coupling grows as sqrt(L): E_L = L(omega - 1) - sqrt(L).
      return {false, omega - 1.0, 1.0, omega - 1.0};
    case 2:
      return {false, omega - 2.0, 1.0, omega - 2.0};
    case 3:
    case 4:
      return {true, -std::numeric_limits<double>::infinity(), l / 2.0, -1.0};
    default:
      throw InvalidParameter("l", "photon order must lie in 1..4");
  }
}

double strong_coupling_boundary(int L, Side side, double kappa) {
  if (!(kappa >= 0.0)) throw InvalidParameter("kappa", "must be >= 0");
  const double sL = std::sqrt(static_cast<double>(L));
  if (side == Side::Upper) {
    if (L < 0 || L > 2) throw InvalidParameter("L", "upper boundary defined for L in {0,1,2}");
    const double sp = std::sqrt(L + 1.0);
    return (sL - sp) - kappa / (L == 0 ? 1.0 : 2.0) * (sL + sp) * (sL + sp);
  }
  if (L < 1 || L > 2) throw InvalidParameter("L", "lower boundary defined for L in {1,2}");
  const double sm = std::sqrt(L - 1.0);
  return (sm - sL) + kappa / (L == 1 ? 1.0 : 2.0) * (sL + sm) * (sL + sm);
}

}  // namespace jchm
