#pragma once

#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qeac {

using BigInt = boost::multiprecision::cpp_int;

/// Multiplicities n_j(L) of the spin-j irreps in the L-fold tensor power of
/// spin ½. Keys are 2j so half-integer spins stay integral.
struct IrrepTable {
  int L = 0;
  std::map<int, BigInt> multiplicities;

  BigInt multiplicity(int two_j) const;
  /// Σ_j n_j(L)·(2j+1); equals 2^L.
  BigInt dimension() const;
  /// Σ_j n_j(L); one dark state per irrep copy.
  BigInt irrep_count() const;
};

/// Built by single-spin coupling from L = 1 (odd steps) and the two-spin
/// recursion from L = 2 (even steps).
IrrepTable irrep_multiplicities(int L);

/// n₀(2l) = (2l)! / (l!·(l+1)!), the l-th Catalan number.
BigInt catalan_multiplicity(int l);

/// binomial(n, k) exactly.
BigInt binomial(int n, int k);

/// Number of orthogonal collective dark states for L qubits.
///
/// Evaluates the recursion N(2l+1) = 2N(2l) − n₀(2l), N(2l+2) = 2N(2l+1)
/// seeded by N(2) = 2, and the closed form binomial(L, ⌈L/2⌉). Throws
/// InternalMismatch if they disagree.
BigInt dark_count(int L);

/// η(L) = log₂ N(L) / L, evaluated with log-gamma.
double efficiency(int L);

/// Large-L approximation 1 − log₂(πL/2)/(2L).
double efficiency_asymptote(int L);

/// Renders 2j as "j" or "j/2".
std::string format_spin(int two_j);

}  // namespace qeac
