#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "qeac/linalg.hpp"

namespace qeac {

/// Largest register accepted by the dense operator builders.
inline constexpr int kMaxDenseQubits = 12;

enum class SiteKind { plus, minus, z };

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

/// Computational-basis index convention: qubit 1 is the most significant
/// bit, so basis index b = Σ_l q_l·2^(L−l). |1⟩ is excited (s^z = +½).
constexpr unsigned site_bit(int L, int site) { return 1u << (L - site); }

/// s_l^±, s_l^z for one site of an L-qubit register.
CMatrix site_operator(int L, int site, SiteKind kind);
SparseCMatrix site_operator_sparse(int L, int site, SiteKind kind);

struct CollectiveOperators {
  int L = 0;
  CMatrix s_plus;
  CMatrix s_minus;
  CMatrix s_z;
  CMatrix s_squared;
};

/// S^± = Σ_l s_l^±, S^z = Σ_l s_l^z, S² = ½(S⁺S⁻ + S⁻S⁺) + (S^z)².
CollectiveOperators collective_operators(int L);

/// S⁻·ψ without materializing S⁻.
CVector apply_collective_lowering(const CVector& psi, int L);

/// Basis indices with exactly `excitations` qubits in |1⟩, ascending.
std::vector<Eigen::Index> excitation_sector(int L, int excitations);

}  // namespace qeac
