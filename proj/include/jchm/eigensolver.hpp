#pragma once

#include <cstddef>
#include <vector>

#include "jchm/operators.hpp"

namespace jchm {

struct EigPair {
  double value = 0.0;
  std::vector<double> vector;
};

inline constexpr double kDefaultEigTol = 1e-10;

/// Matrices up to this dimension go through the direct banded solver; larger
/// ones through restarted Lanczos.
inline constexpr std::size_t kDirectSolverMaxDim = 2048;

/// Algebraically smallest eigenpair of `a`. The returned vector has unit norm,
/// satisfies ||A v - value v|| <= tol * max(1, |value|), and its
/// largest-magnitude component is positive (lowest index on ties).
/// Throws NonConvergence if the residual bound cannot be met.
EigPair smallest_eigpair(const SymmetricMatrix& a, double tol = kDefaultEigTol);

/// Eigenvalue only; cheaper than smallest_eigpair on the direct path.
double smallest_eigenvalue(const SymmetricMatrix& a, double tol = kDefaultEigTol);

/// Restarted Lanczos with full reorthogonalisation. Exposed so the Krylov path
/// can be exercised on small matrices.
EigPair lanczos_smallest(const SymmetricMatrix& a, double tol = kDefaultEigTol,
                         std::size_t krylov_dim = 60, std::size_t max_restarts = 500);

/// Dense-path solver (banded reduction + bisection/inverse iteration).
EigPair direct_smallest(const SymmetricMatrix& a, double tol = kDefaultEigTol);

/// ||A v - value v||_2
double residual_norm(const SymmetricMatrix& a, const EigPair& pair);

}  // namespace jchm
