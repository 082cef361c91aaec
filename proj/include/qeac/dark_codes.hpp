#pragma once

#include <string_view>
#include <vector>

#include "qeac/linalg.hpp"

namespace qeac {

/// Largest register for which the dark basis is built densely.
inline constexpr int kMaxDarkQubits = 10;

struct DarkLabel {
  int two_j = 0;
  int copy = 1;  ///< 1..n_j(L), in order of leading amplitude position
};

/// Orthonormal basis of ker S⁻. Column k of `vectors` is the lowest-weight
/// state |j, −j⟩ of one irrep copy, labelled by `labels[k]`.
///
/// Columns are ordered by the position of their first nonzero amplitude,
/// and each column's leading amplitude is real and positive.
struct DarkBasis {
  int L = 0;
  CMatrix vectors;
  std::vector<DarkLabel> labels;

  Eigen::Index size() const { return vectors.cols(); }
};

DarkBasis compute_dark_basis(int L);

enum class CodeSource { computed, paper };

struct CodewordLabel {
  int two_j = 0;
  int two_mj = 0;
  int copy = 1;
};

struct CodeSpec {
  int L = 0;
  CMatrix codewords;  ///< one codeword per column
  std::vector<CodewordLabel> labels;
  CodeSource source = CodeSource::computed;
};

/// The literal codewords for L = 2, 3, 4 in their published order; product
/// states are expanded over the 2^L computational basis. Throws UnsupportedL
/// for any other L.
CodeSpec paper_codewords(int L);

CodeSpec to_code_spec(const DarkBasis& basis);

/// ‖S⁻·state‖₂. Throws DimensionMismatch if state.size() != 2^L.
double dark_residual(const CVector& state, int L);

/// True iff the orthogonal projectors onto span(a) and span(b) differ by at
/// most tol in Frobenius norm. Different ambient dimensions compare unequal.
bool subspace_equal(const CMatrix& a, const CMatrix& b, double tol);

/// Σ_k logical_k·d_k over the first K dark basis vectors. For L = 2 this maps
/// (c₀, c₁) to c₀|00⟩ + c₁(|01⟩ − |10⟩)/√2.
CVector logical_encode(const DarkBasis& basis, const CVector& logical);
CVector logical_encode(int L, const CVector& logical);

/// Basis vector for a ket written most-significant qubit first, e.g. "0110".
CVector ket(std::string_view bits);

}  // namespace qeac
