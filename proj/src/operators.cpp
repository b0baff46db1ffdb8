#include "jchm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jchm/error.hpp"

namespace jchm {

void ModelParams::validate() const {
  if (l < 1 || l > 4) throw InvalidParameter("l", "photon order must lie in 1..4");
  if (!std::isfinite(omega) || omega < 0.0) throw InvalidParameter("omega", "must be finite and >= 0");
  if (!std::isfinite(Omega) || Omega < 0.0) throw InvalidParameter("Omega", "must be finite and >= 0");
  if (!std::isfinite(mu)) throw InvalidParameter("mu", "must be finite");
  if (!std::isfinite(kappa) || kappa < 0.0) throw InvalidParameter("kappa", "must be finite and >= 0");
  if (z < 1) throw InvalidParameter("z", "coordination number must be >= 1");
}

ModelParams ModelParams::from_axes(int l, int z, double mu, double delta, double x, double y) {
  ModelParams p;
  p.l = l;
  p.z = z;
  p.mu = mu;
  p.kappa = std::pow(10.0, x);
  p.omega = l * mu - y;
  p.Omega = p.omega - delta;
  return p;
}

SymmetricMatrix::SymmetricMatrix(std::size_t dim, std::size_t bandwidth)
    : dim_(dim), kd_(std::min(bandwidth, dim == 0 ? 0 : dim - 1)), band_((kd_ + 1) * dim, 0.0) {}

double SymmetricMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
  if (i < j) std::swap(i, j);
  if (i - j > kd_) return 0.0;
  return band_[(i - j) + j * (kd_ + 1)];
}

double& SymmetricMatrix::cell(std::size_t i, std::size_t j) {
  if (i < j) std::swap(i, j);
  if (i >= dim_ || i - j > kd_) {
    throw std::out_of_range("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") lies outside the stored band");
  }
  return band_[(i - j) + j * (kd_ + 1)];
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) { cell(i, j) = value; }

void SymmetricMatrix::add(std::size_t i, std::size_t j, double value) { cell(i, j) += value; }

std::vector<double> SymmetricMatrix::to_dense() const {
  std::vector<double> dense(dim_ * dim_, 0.0);
  for (std::size_t j = 0; j < dim_; ++j) {
    for (std::size_t i = j; i < std::min(dim_, j + kd_ + 1); ++i) {
      const double v = band_[(i - j) + j * (kd_ + 1)];
      dense[i * dim_ + j] = v;
      dense[j * dim_ + i] = v;
    }
  }
  return dense;
}

void SymmetricMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t j = 0; j < dim_; ++j) {
    const double* col = band_.data() + j * (kd_ + 1);
    y[j] += col[0] * x[j];
    const std::size_t last = std::min(dim_, j + kd_ + 1);
    for (std::size_t i = j + 1; i < last; ++i) {
      const double v = col[i - j];
      y[i] += v * x[j];
      y[j] += v * x[i];
    }
  }
}

double coupling_element(int n, int l) {
  double prod = 1.0;
  for (int k = n + 1; k <= n + l; ++k) prod *= k;
  return std::sqrt(prod);
}

namespace {

void check_order(const ModelParams& params, const HilbertSpace& space) {
  if (params.l != space.l()) {
    throw InvalidParameter("l", "model photon order " + std::to_string(params.l) +
                                    " does not match the space (" + std::to_string(space.l()) + ")");
  }
}

// Interleaved ordering: hopping couples indices 2 apart, the l-photon term
// couples |e,n> (2n+1) with |g,n+l> (2n+2l).
std::size_t band_for(int l) { return std::max<std::size_t>(2, 2 * static_cast<std::size_t>(l) - 1); }

}  // namespace

SymmetricMatrix build_mpjc(const ModelParams& params, const HilbertSpace& space) {
  check_order(params, space);
  const int l = space.l();
  const int n_max = space.n_max();
  SymmetricMatrix h(space.dim(), band_for(l));
  for (int n = 0; n <= n_max; ++n) {
    h.set(HilbertSpace::index_of({Atom::Ground, n}), HilbertSpace::index_of({Atom::Ground, n}),
          params.omega * n);
    h.set(HilbertSpace::index_of({Atom::Excited, n}), HilbertSpace::index_of({Atom::Excited, n}),
          params.Omega + params.omega * n);
  }
  for (int n = 0; n + l <= n_max; ++n) {
    h.set(HilbertSpace::index_of({Atom::Excited, n}), HilbertSpace::index_of({Atom::Ground, n + l}),
          coupling_element(n, l));
  }
  return h;
}

SymmetricMatrix build_mean_field(const ModelParams& params, double psi, const HilbertSpace& space) {
  SymmetricMatrix h = build_mpjc(params, space);
  const double shift = params.z * params.kappa * psi * psi;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    h.add(i, i, shift - params.mu * space.l_of(i));
  }
  if (psi != 0.0) {
    const double hop = -params.z * params.kappa * psi;
    for (int n = 0; n < space.n_max(); ++n) {
      const double amp = hop * std::sqrt(static_cast<double>(n + 1));
      for (Atom a : {Atom::Ground, Atom::Excited}) {
        h.set(HilbertSpace::index_of({a, n}), HilbertSpace::index_of({a, n + 1}), amp);
      }
    }
  }
  return h;
}

std::vector<double> build_l_diag(const HilbertSpace& space) {
  std::vector<double> diag(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) diag[i] = space.l_of(i);
  return diag;
}

}  // namespace jchm
