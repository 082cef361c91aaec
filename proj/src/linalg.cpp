#include "qeac/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace qeac {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index p = b.rows();
  const Eigen::Index q = b.cols();
  CMatrix out(a.rows() * p, a.cols() * q);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * p, j * q, p, q) = a(i, j) * b;
  return out;
}

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

namespace {

double off_diagonal_norm2(const CMatrix& a) {
  double s = 0.0;
  for (Eigen::Index q = 1; q < a.cols(); ++q)
    for (Eigen::Index p = 0; p < q; ++p) s += std::norm(a(p, q));
  return s;
}

// Annihilates a(p,q) with the unitary U = diag(1, e^{-iφ})·R(θ) acting on
// columns p,q, where a(p,q) = |a(p,q)|·e^{iφ} and R is the real Jacobi
// rotation of the phase-fixed 2×2 block.
void rotate(CMatrix& a, CMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  const Complex phase = apq / mag;  // e^{iφ}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = 0.5 * (aqq - app) / mag;
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex ephi_conj = std::conj(phase);

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * ephi_conj * akq;
    a(k, q) = s * akp + c * ephi_conj * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * ephi_conj * vkq;
    v(k, q) = s * vkp + c * ephi_conj * vkq;
  }
}

}  // namespace

Eigensystem hermitian_eigensystem(const CMatrix& input, double tol) {
  if (input.rows() != input.cols())
    throw DimensionMismatch("eigensystem requires a square matrix");
  const double asym = max_abs(input - input.adjoint());
  if (asym > tol)
    throw NonHermitian("‖a − a†‖_max = " + std::to_string(asym) + " exceeds tolerance");

  const Eigen::Index n = input.rows();
  CMatrix a = 0.5 * (input + input.adjoint());
  CMatrix v = CMatrix::Identity(n, n);

  const double scale2 = a.squaredNorm();
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_norm2(a);
    if (off == 0.0 || off <= 1e-32 * scale2) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Entries negligible against both diagonal neighbours are dropped.
        const double g = 100.0 * mag;
        const double app = std::abs(a(p, p).real());
        const double aqq = std::abs(a(q, q).real());
        if (sweep > 3 && app + g == app && aqq + g == aqq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  Eigensystem out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

CMatrix orthonormal_kernel(const CMatrix& a, double rel_tol) {
  const Eigen::Index n = a.cols();
  const double norm = a.norm();
  if (norm == 0.0) return CMatrix::Identity(n, n);
  const CMatrix gram = a.adjoint() * a;
  const Eigensystem es = hermitian_eigensystem(0.5 * (gram + gram.adjoint()), kHermitianTol * std::max(1.0, norm * norm));
  // λ(a†a) carries absolute error ~ε‖a‖², so nullity is decided on the
  // direct residual ‖a·v‖ ≤ rel_tol·‖a‖_F instead of on λ itself.
  Eigen::Index count = 0;
  while (count < n && (a * es.vectors.col(count)).norm() <= rel_tol * norm) ++count;
  return es.vectors.leftCols(count);
}

CMatrix orthonormal_span(const CMatrix& a, double rel_tol) {
  double largest = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) largest = std::max(largest, a.col(j).norm());
  std::vector<CVector> basis;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    CVector w = a.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    const double r = w.norm();
    if (r > rel_tol * largest && r > 0.0) basis.push_back(w / r);
  }
  CMatrix out(a.rows(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = basis[k];
  return out;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  const CMatrix diff = a - b;
  const Eigensystem es = hermitian_eigensystem(0.5 * (diff + diff.adjoint()),
                                               std::numeric_limits<double>::infinity());
  return 0.5 * es.values.cwiseAbs().sum();
}

std::vector<double> uniform_grid(double t_max, int samples) {
  if (samples < 2) throw InvalidArgument("a time grid needs at least two samples");
  if (!(t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  std::vector<double> grid(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    grid[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
  return grid;
}

}  // namespace qeac
