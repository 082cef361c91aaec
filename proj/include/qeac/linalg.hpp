#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qeac/errors.hpp"

namespace qeac {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Default bound on ‖a − a†‖_max accepted by the Hermitian eigensolver.
inline constexpr double kHermitianTol = 1e-10;

/// Default relative threshold for numerical nullity, scaled by ‖a‖_F.
inline constexpr double kKernelRelTol = 1e-9;

/// Kronecker product: out[(i·p+k),(j·q+l)] = a[i,j]·b[k,l].
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvectors stored as the columns of `vectors`.
struct Eigensystem {
  RVector values;
  CMatrix vectors;
};

/// Cyclic complex Jacobi. Throws NonHermitian when ‖a − a†‖_max > tol.
Eigensystem hermitian_eigensystem(const CMatrix& a, double tol = kHermitianTol);

/// Orthonormal basis of {v : a·v = 0}, one vector per column.
///
/// Computed from the eigenvectors of a†a, taken in ascending eigenvalue
/// order while ‖a·v‖ ≤ rel_tol·‖a‖_F. A zero matrix yields the identity.
CMatrix orthonormal_kernel(const CMatrix& a, double rel_tol = kKernelRelTol);

/// Orthonormal basis for the column span of `a` (modified Gram–Schmidt,
/// applied twice). Columns whose residual norm falls below rel_tol times
/// the largest column norm are dropped.
CMatrix orthonormal_span(const CMatrix& a, double rel_tol = 1e-10);

/// Maximum entrywise modulus.
double max_abs(const CMatrix& a);

/// Trace distance ½‖a − b‖₁ between two Hermitian matrices.
double trace_distance(const CMatrix& a, const CMatrix& b);

/// One classical fourth-order Runge–Kutta step of size h.
template <class State, class Derivative>
State rk4_step(const Derivative& f, double t, const State& y, double h) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, State(y + (0.5 * h) * k1));
  const State k3 = f(t + 0.5 * h, State(y + (0.5 * h) * k2));
  const State k4 = f(t + h, State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Integrates dy/dt = f(t, y) with fixed-step RK4 and returns the state at
/// every point of `t_grid` (the first entry is y0 itself).
///
/// Every grid interval must be an integer multiple of dt to within
/// 1e-12·max(1, interval). Inside an interval of width w the integrator
/// takes n = round(w/dt) equal steps of w/n so grid points are hit exactly.
template <class State, class Derivative>
std::vector<State> rk4_integrate(const Derivative& f, const State& y0,
                                 std::span<const double> t_grid, double dt) {
  if (!(dt > 0.0)) throw InvalidStep("dt must be positive");
  std::vector<State> out;
  if (t_grid.empty()) return out;
  out.reserve(t_grid.size());
  out.push_back(y0);
  State y = y0;
  for (std::size_t g = 1; g < t_grid.size(); ++g) {
    const double t0 = t_grid[g - 1];
    const double width = t_grid[g] - t0;
    if (!(width > 0.0)) throw InvalidStep("time grid must be strictly increasing");
    const double steps = std::round(width / dt);
    if (steps < 1.0 || std::abs(steps * dt - width) > 1e-12 * std::max(1.0, width))
      throw InvalidStep("dt does not divide the grid spacing");
    const auto n = static_cast<long>(steps);
    const double h = width / static_cast<double>(n);
    for (long s = 0; s < n; ++s) y = rk4_step(f, t0 + static_cast<double>(s) * h, y, h);
    out.push_back(y);
  }
  return out;
}

/// Uniform grid t_i = t_max·i/(samples−1), i = 0..samples−1.
std::vector<double> uniform_grid(double t_max, int samples);

}  // namespace qeac
