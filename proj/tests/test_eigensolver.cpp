#include <cmath>

#include "doctest.h"
#include "gen.hpp"
#include "jchm/analytic.hpp"
#include "jchm/eigensolver.hpp"
#include "jchm/error.hpp"
#include "oracle.hpp"

using namespace jchm;

namespace {

SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows, std::size_t kd) {
  SymmetricMatrix m(rows.size(), kd);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (rows[i][j] != 0.0) m.set(i, j, rows[i][j]);
  return m;
}

ModelParams resonant(int l, double omega) {
  ModelParams p;
  p.l = l;
  p.omega = omega;
  p.Omega = omega;
  p.mu = 1.0;
  return p;
}

}  // namespace

TEST_CASE("Pauli-x: value -1 with the positive-largest sign convention") {
  const auto pair = smallest_eigpair(from_rows({{0, 1}, {1, 0}}, 1));
  CHECK(pair.value == doctest::Approx(-1.0));
  // Equal magnitudes: the first component carries the positive sign.
  CHECK(pair.vector[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(pair.vector[1] == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("diagonal matrix picks the smallest entry's unit vector") {
  const auto pair = smallest_eigpair(from_rows({{3, 0, 0}, {0, -2, 0}, {0, 0, 7}}, 1));
  CHECK(pair.value == doctest::Approx(-2.0));
  CHECK(pair.vector[1] == doctest::Approx(1.0));
  CHECK(pair.vector[0] == doctest::Approx(0.0));
}

TEST_CASE("l=2 L=2 block at omega=3 matches the quadratic formula") {
  // Block on {|e,0>, |g,2>}: diag entries (Omega - 2mu, 2omega - 2mu), coupling sqrt(2).
  const double expected = oracle::lower_root_2x2(3.0 - 2.0, std::sqrt(2.0), 6.0 - 2.0);
  CHECK(expected == doctest::Approx(0.5 * (-4.0 + 9.0 - std::sqrt(17.0))).epsilon(1e-14));
  const auto pair = smallest_eigpair(from_rows({{1.0, std::sqrt(2.0)}, {std::sqrt(2.0), 4.0}}, 1));
  CHECK(pair.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("invalid tolerance and empty input") {
  CHECK_THROWS_AS(smallest_eigpair(from_rows({{1}}, 1), 0.0), InvalidParameter);
  CHECK_THROWS_AS(lanczos_smallest(SymmetricMatrix(0, 1)), InvalidParameter);
}

TEST_CASE("Lanczos reports non-convergence when starved of iterations") {
  const auto h = build_mean_field(resonant(2, 1.3), 0.7, build_space(2, 200));
  CHECK_THROWS_AS(lanczos_smallest(h, 1e-14, 3, 1), NonConvergence);
}

TEST_CASE("Lanczos and direct paths agree") {
  gen::Source src(0xe16e01);
  for (int trial = 0; trial < 8; ++trial) {
    auto p = src.params();
    const auto h = build_mean_field(p, src.uniform(0.0, 1.5), build_space(p.l, src.integer(30, 120)));
    const auto d = direct_smallest(h);
    const auto k = lanczos_smallest(h);
    CAPTURE(trial);
    CHECK(k.value == doctest::Approx(d.value).epsilon(1e-9));
    CHECK(residual_norm(h, k) <= 1e-10 * std::max(1.0, std::abs(k.value)));
  }
}

TEST_CASE("dimension above the direct limit routes through Lanczos") {
  // dim = 2 * 1100 > 2048
  const auto h = build_mean_field(resonant(1, 3.0), 0.0, build_space(1, 1099));
  const auto pair = smallest_eigpair(h);
  CHECK(pair.vector.size() > kDirectSolverMaxDim);
  CHECK(pair.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("property: eigenvalue agrees with Jacobi on random mean-field matrices") {
  gen::Source src(0xe16e02);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = src.params();
    const int n_max = src.integer(p.l, 14);
    const double psi = src.uniform(0.0, 1.2);
    const auto h = build_mean_field(p, psi, build_space(p.l, n_max));
    const auto ref = oracle::jacobi_eigenvalues(
        oracle::mean_field_hamiltonian(p.l, n_max, p.omega, p.Omega, p.mu, p.kappa, p.z, psi));
    const auto pair = smallest_eigpair(h);
    CAPTURE(trial);
    CHECK(pair.value == doctest::Approx(ref.front()).epsilon(1e-10).scale(1.0));
    CHECK(smallest_eigenvalue(h) == doctest::Approx(pair.value).epsilon(1e-12));
    double norm = 0.0;
    double biggest = 0.0;
    for (double v : pair.vector) {
      norm += v * v;
      if (std::abs(v) > std::abs(biggest)) biggest = v;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(biggest > 0.0);
    CHECK(residual_norm(h, pair) <= 1e-10 * std::max(1.0, std::abs(pair.value)));
  }
}

TEST_CASE("property: smallest eigenvalue never rises with the truncation") {
  gen::Source src(0xe16e03);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = src.params();
    const double psi = src.uniform(0.0, 1.0);
    const int n1 = src.integer(p.l, 25);
    const int n2 = n1 + src.integer(1, 10);
    const double e1 = smallest_eigenvalue(build_mean_field(p, psi, build_space(p.l, n1)));
    const double e2 = smallest_eigenvalue(build_mean_field(p, psi, build_space(p.l, n2)));
    CAPTURE(trial);
    CHECK(e2 <= e1 + 1e-10 * std::max(1.0, std::abs(e1)));
  }
}

TEST_CASE("sector blocks embedded at psi=0 match the closed-form sector energy") {
  for (int l = 1; l <= 4; ++l) {
    for (double omega : {0.5, 1.0, 2.0, 3.0}) {
      const auto space = build_space(l, 30);
      const auto h = build_mean_field(resonant(l, omega), 0.0, space);
      for (int L = l; L <= 30; ++L) {
        const auto g = HilbertSpace::index_of({Atom::Ground, L});
        const auto e = HilbertSpace::index_of({Atom::Excited, L - l});
        SymmetricMatrix block(2, 1);
        block.set(0, 0, h(e, e));
        block.set(1, 1, h(g, g));
        block.set(1, 0, h(g, e));
        const double expected = sector_energy({l, L, omega, omega, 1.0}, Branch::Minus);
        CAPTURE(l);
        CAPTURE(L);
        CHECK(std::abs(smallest_eigpair(block).value - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}
