#include <doctest.h>

#include <cmath>
#include <random>

#include "qeac/noise_field.hpp"

using namespace qeac;

TEST_CASE("coincident qubits recover the collective limit") {
  const Geometry g{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}, 1.0, 1.0};
  const RMatrix gamma = gamma_matrix(g, 2.0);
  CHECK(gamma == RMatrix::Constant(3, 3, 2.0));
  CHECK(collectivity_ratio(g) == 0.0);
}

TEST_CASE("sinc kernel values") {
  const Geometry zero_node{{{0, 0, 0}, {M_PI, 0, 0}}, 1.0, 1.0};
  CHECK(std::abs(gamma_matrix(zero_node, 1.0)(0, 1)) <= 1e-15);
  const Geometry close{{{0, 0, 0}, {0, 0.1, 0}}, 1.0, 1.0};
  CHECK(gamma_matrix(close, 1.0)(0, 1) == doctest::Approx(0.998334).epsilon(1e-6));
  CHECK(gamma_matrix(close, 1.0)(0, 1) == doctest::Approx(std::sin(0.1) / 0.1).epsilon(1e-15));
}

TEST_CASE("collectivity ratio") {
  const Geometry ion{{{0, 0, 0}, {3e-6, 0, 0}}, 1e14, 3e8};
  CHECK(collectivity_ratio(ion) == doctest::Approx(1.0).epsilon(1e-12));
  Geometry doubled = ion;
  doubled.positions_m[1][0] *= 2.0;
  CHECK(collectivity_ratio(doubled) == doctest::Approx(2.0).epsilon(1e-12));
  const Geometry single{{{0, 0, 0}}, 1.0, 1.0};
  CHECK_THROWS_AS(collectivity_ratio(single), InvalidArgument);
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS(gamma_matrix(Geometry{{}, 1.0, 1.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(gamma_matrix(Geometry{{{0, 0, 0}}, 0.0, 1.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(gamma_matrix(Geometry{{{0, 0, 0}}, 1.0, -1.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(gamma_matrix(Geometry{{{0, 0, 0}}, 1.0, 1.0}, 0.0), InvalidArgument);
}

TEST_CASE("gamma matrix is PSD for random geometries") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> count(2, 8);
  for (int trial = 0; trial < 100; ++trial) {
    Geometry g{{}, 1.0, 1.0};
    const int n = count(rng);
    for (int i = 0; i < n; ++i) g.positions_m.push_back({u(rng), u(rng), u(rng)});
    const RMatrix gamma = gamma_matrix(g, 1.0);
    CHECK(gamma == RMatrix(gamma.transpose()));
    for (int i = 0; i < n; ++i) CHECK(gamma(i, i) == 1.0);
    const auto es = hermitian_eigensystem(gamma.cast<Complex>());
    CHECK(es.values(0) >= -1e-10 * n);
  }
}

TEST_CASE("gamma approaches all-ones when the ratio is small") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Geometry g{{}, 1.0, 1.0};
    for (int i = 0; i < 4; ++i) g.positions_m.push_back({u(rng), u(rng), u(rng)});
    const double scale = 0.01 / collectivity_ratio(g);
    for (auto& p : g.positions_m)
      for (auto& x : p) x *= scale;
    REQUIRE(collectivity_ratio(g) <= 0.01 + 1e-15);
    CHECK((gamma_matrix(g, 1.0) - RMatrix::Ones(4, 4)).cwiseAbs().maxCoeff() <= 1e-4);
  }
}

TEST_CASE("Lamb-shift models") {
  const Geometry g = collinear_geometry(3, 2.0, 1.0, 1.0);
  CHECK(delta_matrix(g, {}) == RMatrix::Zero(3, 3));
  CHECK(delta_matrix(g, {LambModel::collective, 0.7, 1.0}) == RMatrix::Constant(3, 3, 0.7));
  const RMatrix cosk = delta_matrix(g, {LambModel::cos_kernel, 0.2, 1.0});
  CHECK(cosk == RMatrix(cosk.transpose()));
  CHECK(cosk(0, 0) == 0.2);
  CHECK(cosk(0, 1) == doctest::Approx(-0.5 * std::cos(1.0)));
  const Geometry stacked{{{0, 0, 0}, {0, 0, 1e-9}}, 1.0, 1.0};
  CHECK_THROWS_AS(delta_matrix(stacked, {LambModel::cos_kernel, 0.0, 1.0}), SingularSeparation);
}

TEST_CASE("model factories") {
  const DampingModel ind = independent_model(4, 1.5);
  CHECK(ind.gamma == RMatrix(1.5 * RMatrix::Identity(4, 4)));
  CHECK(ind.kind == DampingKind::independent);
  const DampingModel col = collective_model(3, 1.0, 0.5);
  CHECK(col.gamma == RMatrix::Ones(3, 3));
  CHECK(col.delta == RMatrix::Constant(3, 3, 0.5));
  const DampingModel cor = correlated_model(collinear_geometry(3, 0.0, 1.0, 1.0), 1.0);
  CHECK(cor.gamma == col.gamma);
  CHECK(cor.kind == DampingKind::correlated);

  RMatrix bad(2, 2);
  bad << 1, 2, 2, 1;  // eigenvalue −1
  CHECK_THROWS_AS(custom_model(bad, RMatrix::Zero(2, 2)), NotPSD);
  RMatrix asym(2, 2);
  asym << 1, 0.5, 0.2, 1;
  CHECK_THROWS_AS(custom_model(asym, RMatrix::Zero(2, 2)), InvalidArgument);
  CHECK_THROWS_AS(custom_model(RMatrix::Identity(2, 2), RMatrix::Zero(3, 3)), DimensionMismatch);
}

TEST_CASE("collinear geometry spans the requested separation") {
  const Geometry g = collinear_geometry(3, 2.0, 5.0, 2.5);
  CHECK(g.max_separation() == doctest::Approx(2.0));
  CHECK(collectivity_ratio(g) == doctest::Approx(4.0));
}
