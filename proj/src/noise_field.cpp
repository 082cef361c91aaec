#include "qeac/noise_field.hpp"

#include <cmath>
#include <string>

namespace qeac {

double Geometry::distance(int i, int j) const {
  const auto& a = positions_m[static_cast<std::size_t>(i)];
  const auto& b = positions_m[static_cast<std::size_t>(j)];
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

double Geometry::max_separation() const {
  double d = 0.0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j) d = std::max(d, distance(i, j));
  return d;
}

void validate(const Geometry& g) {
  if (g.positions_m.empty()) throw InvalidArgument("geometry needs at least one position");
  if (!(g.omega0_rad_s > 0.0)) throw InvalidArgument("omega0 must be positive");
  if (!(g.v0_m_s > 0.0)) throw InvalidArgument("v0 must be positive");
}

Geometry collinear_geometry(int n, double span_m, double omega0_rad_s, double v0_m_s) {
  if (n < 1) throw InvalidArgument("need at least one qubit");
  Geometry g{{}, omega0_rad_s, v0_m_s};
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? 0.0 : span_m * static_cast<double>(i) / static_cast<double>(n - 1);
    g.positions_m.push_back({x, 0.0, 0.0});
  }
  validate(g);
  return g;
}

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

void check_psd(const RMatrix& gamma, double gamma0) {
  const auto L = static_cast<double>(gamma.rows());
  const Eigensystem es = hermitian_eigensystem(gamma.cast<Complex>(), 1e-12 * gamma0 * L);
  if (es.values(0) < -1e-8 * gamma0 * L)
    throw NotPSD("damping matrix has eigenvalue " + std::to_string(es.values(0)));
}

}  // namespace

RMatrix gamma_matrix(const Geometry& g, double gamma0) {
  validate(g);
  if (!(gamma0 > 0.0)) throw InvalidArgument("gamma0 must be positive");
  const int n = g.size();
  const double k0 = g.k0();
  RMatrix gamma(n, n);
  for (int i = 0; i < n; ++i) {
    gamma(i, i) = gamma0;
    for (int j = i + 1; j < n; ++j) gamma(i, j) = gamma(j, i) = gamma0 * sinc(k0 * g.distance(i, j));
  }
  check_psd(gamma, gamma0);
  return gamma;
}

RMatrix delta_matrix(const Geometry& g, const LambParams& params) {
  validate(g);
  const int n = g.size();
  switch (params.model) {
    case LambModel::zero:
      return RMatrix::Zero(n, n);
    case LambModel::collective:
      return RMatrix::Constant(n, n, params.delta0);
    case LambModel::cos_kernel: {
      RMatrix delta(n, n);
      for (int i = 0; i < n; ++i) {
        delta(i, i) = params.delta0;
        for (int j = i + 1; j < n; ++j) {
          const double x = g.k0() * g.distance(i, j);
          if (x < 1e-6) throw SingularSeparation("cos kernel diverges at k0·r = " + std::to_string(x));
          delta(i, j) = delta(j, i) = -0.5 * params.gamma0 * std::cos(x) / x;
        }
      }
      return delta;
    }
  }
  throw InvalidArgument("unknown Lamb-shift model");
}

double collectivity_ratio(const Geometry& g) {
  validate(g);
  if (g.size() < 2) throw InvalidArgument("collectivity ratio needs at least two positions");
  return g.max_separation() * g.k0();
}

DampingModel collective_model(int L, double gamma0, double delta0) {
  if (L < 1) throw InvalidArgument("qubit count must be at least 1");
  if (!(gamma0 > 0.0)) throw InvalidArgument("gamma0 must be positive");
  return DampingModel{L, RMatrix::Constant(L, L, gamma0), RMatrix::Constant(L, L, delta0),
                      DampingKind::collective};
}

DampingModel independent_model(int L, double gamma0, double delta0) {
  if (L < 1) throw InvalidArgument("qubit count must be at least 1");
  if (!(gamma0 > 0.0)) throw InvalidArgument("gamma0 must be positive");
  return DampingModel{L, gamma0 * RMatrix::Identity(L, L), delta0 * RMatrix::Identity(L, L),
                      DampingKind::independent};
}

DampingModel correlated_model(const Geometry& g, double gamma0, const LambParams& lamb) {
  return DampingModel{g.size(), gamma_matrix(g, gamma0), delta_matrix(g, lamb), DampingKind::correlated};
}

DampingModel custom_model(RMatrix gamma, RMatrix delta) {
  const auto n = gamma.rows();
  if (n < 1 || gamma.cols() != n || delta.rows() != n || delta.cols() != n)
    throw DimensionMismatch("gamma and delta must be square and of equal size");
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 0.0 ||
      (delta - delta.transpose()).cwiseAbs().maxCoeff() > 0.0)
    throw InvalidArgument("gamma and delta must be symmetric");
  const double g0 = gamma(0, 0);
  if (!(g0 > 0.0)) throw InvalidArgument("gamma diagonal must be positive");
  for (Eigen::Index i = 1; i < n; ++i)
    if (gamma(i, i) != g0) throw InvalidArgument("gamma diagonal entries must all equal gamma0");
  check_psd(gamma, g0);
  return DampingModel{static_cast<int>(n), std::move(gamma), std::move(delta), DampingKind::custom};
}

}  // namespace qeac
