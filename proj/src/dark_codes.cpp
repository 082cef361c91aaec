#include "qeac/dark_codes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "qeac/rep_theory.hpp"
#include "qeac/spin_ops.hpp"

namespace qeac {

namespace {

constexpr double kPivotTol = 1e-8;
constexpr double kCasimirTol = 1e-9;

// Canonical orthonormal basis of span(columns): reduced row echelon form of
// the stacked vectors, then Gram–Schmidt from the last row upward. Each
// output vector keeps its pivot as the first nonzero entry, with a real
// positive value there.
struct EchelonBasis {
  CMatrix vectors;
  std::vector<Eigen::Index> pivots;
};

EchelonBasis echelon_basis(const CMatrix& span) {
  const Eigen::Index k = span.cols();
  const Eigen::Index dim = span.rows();
  CMatrix rows = span.transpose();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < dim && r < k; ++c) {
    Eigen::Index best = r;
    for (Eigen::Index i = r + 1; i < k; ++i)
      if (std::abs(rows(i, c)) > std::abs(rows(best, c))) best = i;
    if (std::abs(rows(best, c)) < kPivotTol) continue;
    rows.row(r).swap(rows.row(best));
    rows.row(r) /= rows(r, c);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (i == r) continue;
      const Complex f = rows(i, c);
      if (f != Complex(0.0)) rows.row(i) -= f * rows.row(r);
      rows(i, c) = 0.0;
    }
    pivots.push_back(c);
    ++r;
  }
  if (r != k) throw InternalMismatch("subspace basis is numerically rank deficient");

  for (Eigen::Index i = 0; i < k; ++i) {
    const auto p = pivots[static_cast<std::size_t>(i)];
    rows.row(i).head(p).setZero();
    rows(i, p) = 1.0;
    for (Eigen::Index other = 0; other < k; ++other)
      if (other != i) rows(other, p) = 0.0;
  }

  CMatrix out(dim, k);
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    CVector w = rows.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index s = i + 1; s < k; ++s) w -= out.col(s).dot(w) * out.col(s);
    out.col(i) = w / w.norm();
  }
  return EchelonBasis{out, pivots};
}

int two_j_from_casimir(double value) {
  // j(j+1) = value  =>  2j = √(1 + 4·value) − 1
  const int two_j = static_cast<int>(std::lround(std::sqrt(1.0 + 4.0 * std::max(value, 0.0)) - 1.0));
  const double expected = 0.25 * two_j * (two_j + 2);
  if (std::abs(value - expected) > kCasimirTol)
    throw InternalMismatch("S² eigenvalue " + std::to_string(value) + " is not of the form j(j+1)");
  return two_j;
}

}  // namespace

DarkBasis compute_dark_basis(int L) {
  if (L < 1) throw InvalidArgument("qubit count must be at least 1");
  if (L > kMaxDarkQubits)
    throw TooManyQubits("dark basis limited to L ≤ " + std::to_string(kMaxDarkQubits));
  const Eigen::Index dim = Eigen::Index{1} << L;

  // S⁻ maps the k-excitation sector into the (k−1)-excitation sector, so
  // ker S⁻ is the direct sum of the kernels of those blocks.
  SparseCMatrix lowering(dim, dim);
  for (int l = 1; l <= L; ++l) lowering += site_operator_sparse(L, l, SiteKind::minus);
  const CMatrix lowering_dense(lowering);

  std::vector<CVector> kernel;
  for (int k = 0; k <= L; ++k) {
    const auto cols = excitation_sector(L, k);
    const auto rows = k > 0 ? excitation_sector(L, k - 1) : std::vector<Eigen::Index>{};
    CMatrix block(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = lowering_dense(rows[i], cols[j]);
    const CMatrix null = orthonormal_kernel(block);
    for (Eigen::Index c = 0; c < null.cols(); ++c) {
      CVector v = CVector::Zero(dim);
      for (std::size_t j = 0; j < cols.size(); ++j) v(cols[j]) = null(static_cast<Eigen::Index>(j), c);
      kernel.push_back(std::move(v));
    }
  }
  const auto n_dark = static_cast<Eigen::Index>(kernel.size());
  CMatrix kernel_basis(dim, n_dark);
  for (Eigen::Index c = 0; c < n_dark; ++c) kernel_basis.col(c) = kernel[static_cast<std::size_t>(c)];

  const BigInt expected = dark_count(L);
  if (BigInt(n_dark) != expected)
    throw InternalMismatch("kernel dimension " + std::to_string(n_dark) + " differs from N(L) = " +
                           expected.str());

  // Block-diagonalize S² on the kernel; each eigenvalue j(j+1) labels a block.
  const auto ops = collective_operators(L);
  const CMatrix restricted = kernel_basis.adjoint() * ops.s_squared * kernel_basis;
  const Eigensystem es = hermitian_eigensystem(0.5 * (restricted + restricted.adjoint()), 1e-9);
  std::map<int, std::vector<Eigen::Index>> blocks;
  for (Eigen::Index i = 0; i < n_dark; ++i) blocks[two_j_from_casimir(es.values(i))].push_back(i);

  struct Entry {
    Eigen::Index pivot;
    int two_j;
    CVector vector;
  };
  std::vector<Entry> entries;
  for (const auto& [two_j, idx] : blocks) {
    CMatrix span(dim, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
      span.col(static_cast<Eigen::Index>(c)) = kernel_basis * es.vectors.col(idx[c]);
    const EchelonBasis canon = echelon_basis(span);
    for (Eigen::Index c = 0; c < canon.vectors.cols(); ++c)
      entries.push_back({canon.pivots[static_cast<std::size_t>(c)], two_j, canon.vectors.col(c)});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.pivot < b.pivot; });

  DarkBasis out{L, CMatrix(dim, n_dark), {}};
  std::map<int, int> copies;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out.vectors.col(static_cast<Eigen::Index>(i)) = entries[i].vector;
    out.labels.push_back({entries[i].two_j, ++copies[entries[i].two_j]});
  }
  return out;
}

CVector ket(std::string_view bits) {
  const auto L = static_cast<int>(bits.size());
  if (L < 1 || L > 30) throw InvalidArgument("ket needs 1..30 qubits");
  Eigen::Index index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("ket digits must be 0 or 1");
    index = (index << 1) | (c == '1' ? 1 : 0);
  }
  CVector v = CVector::Zero(Eigen::Index{1} << L);
  v(index) = 1.0;
  return v;
}

CodeSpec paper_codewords(int L) {
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  const double r6 = std::sqrt(6.0);
  std::vector<std::pair<CVector, CodewordLabel>> words;
  switch (L) {
    case 2:
      words = {
          {(ket("01") - ket("10")) / r2, {0, 0, 1}},
          {ket("00"), {2, -2, 1}},
      };
      break;
    case 3:
      words = {
          {(ket("001") + ket("100") - 2.0 * ket("010")) / r6, {1, -1, 1}},
          {(ket("001") - ket("100")) / r2, {1, -1, 2}},
          {ket("000"), {3, -3, 1}},
      };
      break;
    case 4: {
      const CVector singlet = (ket("01") - ket("10")) / r2;
      const CVector triplet0 = (ket("01") + ket("10")) / r2;
      const CVector ground = ket("00");
      const auto pair = [](const CVector& a, const CVector& b) { return CVector(kron(a, b)); };
      words = {
          {pair(singlet, singlet), {0, 0, 1}},
          {(ket("0011") + ket("1100") - pair(triplet0, triplet0)) / r3, {0, 0, 2}},
          {pair(singlet, ground), {2, -2, 1}},
          {pair(ground, singlet), {2, -2, 2}},
          {(pair(triplet0, ground) - pair(ground, triplet0)) / r2, {2, -2, 3}},
          {ket("0000"), {4, -4, 1}},
      };
      break;
    }
    default:
      throw UnsupportedL("published codewords exist only for L = 2, 3, 4");
  }
  CodeSpec spec{L, CMatrix(Eigen::Index{1} << L, static_cast<Eigen::Index>(words.size())), {}, CodeSource::paper};
  for (std::size_t i = 0; i < words.size(); ++i) {
    spec.codewords.col(static_cast<Eigen::Index>(i)) = words[i].first;
    spec.labels.push_back(words[i].second);
  }
  return spec;
}

CodeSpec to_code_spec(const DarkBasis& basis) {
  CodeSpec spec{basis.L, basis.vectors, {}, CodeSource::computed};
  for (const auto& label : basis.labels) spec.labels.push_back({label.two_j, -label.two_j, label.copy});
  return spec;
}

double dark_residual(const CVector& state, int L) {
  return apply_collective_lowering(state, L).norm();
}

bool subspace_equal(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows()) return false;
  const CMatrix qa = orthonormal_span(a);
  const CMatrix qb = orthonormal_span(b);
  return (qa * qa.adjoint() - qb * qb.adjoint()).norm() <= tol;
}

CVector logical_encode(const DarkBasis& basis, const CVector& logical) {
  if (logical.size() > basis.size())
    throw TooManyLogicalAmplitudes(std::to_string(logical.size()) + " amplitudes for a " +
                                   std::to_string(basis.size()) + "-dimensional code space");
  if (std::abs(logical.norm() - 1.0) > 1e-10) throw NotNormalized("logical state must have unit norm");
  return basis.vectors.leftCols(logical.size()) * logical;
}

CVector logical_encode(int L, const CVector& logical) {
  return logical_encode(compute_dark_basis(L), logical);
}

}  // namespace qeac
