#include "jchm/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jchm/error.hpp"

namespace jchm {

PsiSearchSpec PsiSearchSpec::defaults_for(int n_max) {
  PsiSearchSpec spec;
  spec.psi_max = std::sqrt(static_cast<double>(n_max)) / 2.0;
  return spec;
}

void PsiSearchSpec::validate() const {
  if (coarse_steps < 8) throw InvalidParameter("coarse_steps", "must be >= 8");
  if (!(refine_tol > 0.0)) throw InvalidParameter("refine_tol", "must be > 0");
  if (!(psi_zero_eps > refine_tol)) throw InvalidParameter("psi_zero_eps", "must exceed refine_tol");
  if (!(psi_max > psi_zero_eps) || !std::isfinite(psi_max)) {
    throw InvalidParameter("psi_max", "must be finite and exceed psi_zero_eps");
  }
  if (!(energy_tie_eps >= 0.0)) throw InvalidParameter("energy_tie_eps", "must be >= 0");
  if (!(eig_tol > 0.0)) throw InvalidParameter("tol", "must be > 0");
}

double energy_at_psi(const ModelParams& params, double psi, const HilbertSpace& space, double tol) {
  if (!std::isfinite(psi)) throw InvalidParameter("psi", "must be finite");
  return smallest_eigenvalue(build_mean_field(params, psi, space), tol);
}

double expected_L(std::span<const double> vector, const HilbertSpace& space) {
  double sum = 0.0;
  for (std::size_t i = 0; i < vector.size(); ++i) sum += vector[i] * vector[i] * space.l_of(i);
  return sum;
}

namespace {

struct Sample {
  double psi;
  double energy;
};

// Golden-section search on [lo, hi]; returns the best point evaluated.
template <class F>
Sample golden_section(F&& f, double lo, double hi, double tol, Sample seed) {
  constexpr double inv_phi = 0.6180339887498949;
  Sample best = seed;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  auto track = [&best](double p, double e) {
    if (e < best.energy || (e == best.energy && p < best.psi)) best = {p, e};
  };
  track(c, fc);
  track(d, fd);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
      track(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
      track(d, fd);
    }
  }
  return best;
}

}  // namespace

MeanFieldSolution minimize_over_psi(const ModelParams& params, const HilbertSpace& space,
                                    const PsiSearchSpec& spec) {
  params.validate();
  spec.validate();
  auto energy = [&](double psi) { return energy_at_psi(params, psi, space, spec.eig_tol); };

  const int steps = spec.coarse_steps;
  const double dpsi = spec.psi_max / (steps - 1);
  std::vector<double> coarse(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) coarse[static_cast<std::size_t>(k)] = energy(k * dpsi);

  Sample best{0.0, coarse[0]};
  int best_k = 0;
  for (int k = 0; k < steps; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const bool left_ok = k == 0 || coarse[ku] < coarse[ku - 1];
    const bool right_ok = k == steps - 1 || coarse[ku] <= coarse[ku + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = std::max(0.0, (k - 1) * dpsi);
    const double hi = std::min(spec.psi_max, (k + 1) * dpsi);
    const Sample refined = golden_section(energy, lo, hi, spec.refine_tol, {k * dpsi, coarse[ku]});
    if (refined.energy < best.energy || (refined.energy == best.energy && refined.psi < best.psi)) {
      best = refined;
      best_k = k;
    }
  }

  MeanFieldSolution sol;
  sol.n_max_used = space.n_max();
  sol.bracket_exhausted = best_k == steps - 1 && spec.psi_max - best.psi <= 2 * spec.refine_tol;
  if (best.psi < spec.psi_zero_eps && coarse[0] <= best.energy + spec.energy_tie_eps) {
    best = {0.0, coarse[0]};
  }
  sol.psi_star = best.psi;
  EigPair ground = smallest_eigpair(build_mean_field(params, best.psi, space), spec.eig_tol);
  sol.energy = ground.value;
  sol.l_expect = expected_L(ground.vector, space);
  sol.ground_vector = std::move(ground.vector);
  return sol;
}

}  // namespace jchm
