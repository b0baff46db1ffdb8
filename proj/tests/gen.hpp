#pragma once

// Small generators for property tests. Every test seeds its own stream so a
// failure reproduces from the printed case index alone.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "jchm/operators.hpp"

namespace gen {

class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Physically valid parameters: omega > 0, Omega >= 0, small to moderate kappa.
  jchm::ModelParams params(int l) {
    jchm::ModelParams p;
    p.l = l;
    p.omega = uniform(0.2, 3.5);
    p.Omega = std::max(0.0, p.omega + uniform(-0.5, 0.5));
    p.mu = uniform(0.2, 1.5);
    p.kappa = std::pow(10.0, uniform(-4.0, -0.3));
    p.z = integer(1, 6);
    return p;
  }

  jchm::ModelParams params() { return params(integer(1, 4)); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
