#pragma once

#include <array>
#include <vector>

#include "qeac/linalg.hpp"

namespace qeac {

/// Qubit positions (m) plus the bath parameters at the transition: ω₀
/// (rad/s) and the phase velocity v₀ (m/s), so that k₀ = ω₀/v₀.
struct Geometry {
  std::vector<std::array<double, 3>> positions_m;
  double omega0_rad_s = 1.0;
  double v0_m_s = 1.0;

  int size() const { return static_cast<int>(positions_m.size()); }
  double k0() const { return omega0_rad_s / v0_m_s; }
  double distance(int i, int j) const;  // 0-based
  double max_separation() const;
};

/// Throws InvalidArgument unless ω₀ > 0, v₀ > 0 and positions are non-empty.
void validate(const Geometry& g);

/// n qubits on the x axis with spacing such that the largest separation is
/// `span_m`.
Geometry collinear_geometry(int n, double span_m, double omega0_rad_s, double v0_m_s);

enum class DampingKind { collective, independent, correlated, custom };

/// Damping rates γ_ij (1/s) and Lamb shifts δ_ij (rad/s) for L qubits.
struct DampingModel {
  int L = 0;
  RMatrix gamma;
  RMatrix delta;
  DampingKind kind = DampingKind::custom;

  double gamma0() const { return gamma(0, 0); }
};

/// Correlated decay rates for an isotropic three-dimensional scalar bath in
/// the continuum limit: γ_ij = γ₀·sin(k₀r_ij)/(k₀r_ij), γ_ii = γ₀.
///
/// Throws NotPSD if the smallest eigenvalue is below −1e-8·γ₀·L.
RMatrix gamma_matrix(const Geometry& g, double gamma0);

enum class LambModel {
  zero,        ///< δ_ij = 0
  collective,  ///< δ_ij = δ₀ for all i, j
  cos_kernel,  ///< δ_ii = δ₀, δ_ij = −(γ₀/2)·cos(k₀r)/(k₀r); exploratory only
};

struct LambParams {
  LambModel model = LambModel::zero;
  double delta0 = 0.0;
  double gamma0 = 1.0;  ///< scale of the cos-kernel off-diagonal terms
};

/// Throws SingularSeparation for the cos kernel when some k₀r_ij < 1e-6.
RMatrix delta_matrix(const Geometry& g, const LambParams& params);

/// d·ω₀/v₀ with d the largest pairwise separation. Values ≪ 1 mean every
/// pair sits well inside one effective wavelength of the noise field.
double collectivity_ratio(const Geometry& g);

DampingModel collective_model(int L, double gamma0, double delta0 = 0.0);
DampingModel independent_model(int L, double gamma0, double delta0 = 0.0);
DampingModel correlated_model(const Geometry& g, double gamma0, const LambParams& lamb = {});
/// Validates shape and symmetry of caller-supplied matrices.
DampingModel custom_model(RMatrix gamma, RMatrix delta);

}  // namespace qeac
