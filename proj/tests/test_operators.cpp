#include <cmath>

#include "doctest.h"
#include "gen.hpp"
#include "jchm/error.hpp"
#include "jchm/operators.hpp"
#include "oracle.hpp"

using namespace jchm;

namespace {

ModelParams resonant(int l, double omega, double mu = 1.0) {
  ModelParams p;
  p.l = l;
  p.omega = omega;
  p.Omega = omega;
  p.mu = mu;
  return p;
}

}  // namespace

TEST_CASE("coupling element values") {
  CHECK(coupling_element(0, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(coupling_element(3, 1) == doctest::Approx(2.0));
  CHECK(coupling_element(0, 4) == doctest::Approx(std::sqrt(24.0)));
}

TEST_CASE("l=2 coupling sits between |e,0> and |g,2>") {
  const auto space = build_space(2, 4);
  const auto h = build_mpjc(resonant(2, 1.0), space);
  const auto e0 = HilbertSpace::index_of({Atom::Excited, 0});
  const auto g2 = HilbertSpace::index_of({Atom::Ground, 2});
  CHECK(h(e0, g2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(h(g2, e0) == h(e0, g2));
}

TEST_CASE("l=1 L=1 block at psi=0") {
  const auto space = build_space(1, 5);
  const auto h = build_mean_field(resonant(1, 2.0), 0.0, space);
  const auto g1 = HilbertSpace::index_of({Atom::Ground, 1});
  const auto e0 = HilbertSpace::index_of({Atom::Excited, 0});
  CHECK(h(g1, g1) == doctest::Approx(1.0));
  CHECK(h(e0, e0) == doctest::Approx(1.0));
  CHECK(h(g1, e0) == doctest::Approx(1.0));
  CHECK(oracle::lower_root_2x2(h(g1, g1), h(g1, e0), h(e0, e0)) == doctest::Approx(0.0));
}

TEST_CASE("hopping element") {
  ModelParams p = resonant(1, 2.0);
  p.kappa = 0.1;
  p.z = 2;
  const auto space = build_space(1, 3);
  const auto h = build_mean_field(p, 0.5, space);
  CHECK(h(HilbertSpace::index_of({Atom::Ground, 0}), HilbertSpace::index_of({Atom::Ground, 1})) ==
        doctest::Approx(-0.1));
}

TEST_CASE("L diagonal") {
  CHECK(build_l_diag(build_space(1, 1)) == std::vector<double>{0, 1, 1, 2});
  CHECK(build_l_diag(build_space(2, 2)) == std::vector<double>{0, 2, 1, 3, 2, 4});
}

TEST_CASE("parameter validation names the field") {
  ModelParams p = resonant(1, 1.0);
  p.omega = -1.0;
  try {
    p.validate();
    FAIL("expected throw");
  } catch (const InvalidParameter& e) {
    CHECK(e.field() == "omega");
  }
  p = resonant(1, 1.0);
  p.kappa = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = resonant(1, 1.0);
  p.z = 0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = resonant(7, 1.0);
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
}

TEST_CASE("builders reject an l mismatch") {
  const auto space = build_space(2, 4);
  CHECK_THROWS_AS(build_mean_field(resonant(1, 1.0), 0.0, space), InvalidParameter);
  CHECK_THROWS_AS(build_mpjc(resonant(3, 1.0), space), InvalidParameter);
}

TEST_CASE("from_axes maps x and y onto the model") {
  const auto p = ModelParams::from_axes(2, 2, 1.0, 0.25, -2.0, -0.5);
  CHECK(p.kappa == doctest::Approx(0.01));
  CHECK(p.omega == doctest::Approx(2.5));
  CHECK(p.Omega == doctest::Approx(2.25));
  CHECK(p.detuning() == doctest::Approx(0.25));
}

TEST_CASE("band matrix storage") {
  SymmetricMatrix m(5, 2);
  m.set(3, 1, 4.0);
  CHECK(m(1, 3) == 4.0);
  m.add(1, 3, 1.0);
  CHECK(m(3, 1) == 5.0);
  CHECK(m(0, 4) == 0.0);
  CHECK_THROWS_AS(m.set(0, 4, 1.0), std::out_of_range);
  CHECK_THROWS_AS(m.set(0, 5, 1.0), std::out_of_range);
  CHECK(m.leading_dimension() == 3);

  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y(5);
  m.multiply(x, y);
  CHECK(y[1] == doctest::Approx(20.0));
  CHECK(y[3] == doctest::Approx(10.0));
}

TEST_CASE("property: mean-field matrix equals the operator-algebra construction") {
  gen::Source src(0x5eed01);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = src.params();
    const int n_max = src.integer(p.l, 12);
    const double psi = src.uniform(-1.5, 1.5);
    CAPTURE(trial);
    const auto h = build_mean_field(p, psi, build_space(p.l, n_max));
    const auto ref = oracle::mean_field_hamiltonian(p.l, n_max, p.omega, p.Omega, p.mu, p.kappa, p.z, psi);
    const auto dense = h.to_dense();
    REQUIRE(dense.size() == ref.a.size());
    for (std::size_t k = 0; k < dense.size(); ++k) CHECK(dense[k] == doctest::Approx(ref.a[k]).epsilon(1e-13));
  }
}

TEST_CASE("property: hermiticity is exact") {
  gen::Source src(0x5eed02);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = src.params();
    const auto h = build_mean_field(p, src.uniform(0, 2), build_space(p.l, src.integer(p.l, 30)));
    const auto d = h.to_dense();
    const std::size_t n = h.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) REQUIRE(d[i * n + j] == d[j * n + i]);
  }
}

TEST_CASE("property: L commutes with the psi=0 Hamiltonian") {
  gen::Source src(0x5eed03);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = src.params();
    const auto space = build_space(p.l, src.integer(p.l, 30));
    const auto h = build_mean_field(p, 0.0, space);
    const auto L = build_l_diag(space);
    for (std::size_t i = 0; i < space.dim(); ++i)
      for (std::size_t j = 0; j < space.dim(); ++j) REQUIRE(std::abs(h(i, j) * (L[j] - L[i])) <= 1e-12);
  }
}

TEST_CASE("property: psi=0 matrix is bitwise independent of kappa") {
  gen::Source src(0x5eed04);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = src.params();
    const auto space = build_space(p.l, src.integer(p.l, 20));
    const auto a = build_mean_field(p, 0.0, space).to_dense();
    p.kappa = src.uniform(0.0, 5.0);
    const auto b = build_mean_field(p, 0.0, space).to_dense();
    CHECK(a == b);
  }
}

TEST_CASE("property: psi and -psi are related by a diagonal sign gauge") {
  gen::Source src(0x5eed05);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = src.params();
    const auto space = build_space(p.l, src.integer(p.l, 15));
    const double psi = src.uniform(0.01, 1.5);
    const auto hp = build_mean_field(p, psi, space);
    const auto hm = build_mean_field(p, -psi, space);
    auto sign = [&](std::size_t i) {
      const auto st = HilbertSpace::state_of(i);
      int s = (st.photons % 2 == 0) ? 1 : -1;
      if (st.atom == Atom::Excited && p.l % 2 == 1) s = -s;
      return s;
    };
    for (std::size_t i = 0; i < space.dim(); ++i)
      for (std::size_t j = 0; j < space.dim(); ++j)
        REQUIRE(hm(i, j) == doctest::Approx(sign(i) * sign(j) * hp(i, j)).epsilon(1e-14));
  }
}
