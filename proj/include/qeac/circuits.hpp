#pragma once

#include "qeac/linalg.hpp"

namespace qeac {

enum class GateKind { cnot, chadamard };

/// Controlled gate on an L-qubit register; sites are 1-based.
struct GateOp {
  GateKind kind = GateKind::cnot;
  int control = 1;
  int target = 2;
  int L = 2;
};

/// Single-qubit map used by the controlled-Hadamard of the two-qubit code:
/// |1⟩ → (|1⟩ + |0⟩)/√2 and |0⟩ → (|1⟩ − |0⟩)/√2. It differs from the usual
/// Hadamard by the sign on |0⟩ but is still Hermitian and involutory.
CMatrix code_hadamard();

/// Dense 2^L unitary. Throws InvalidSites for control == target or sites
/// outside 1..L.
CMatrix gate_matrix(const GateOp& gate);

/// Applies gates left to right (the first element acts first).
CVector apply_circuit(std::initializer_list<GateOp> gates, const CVector& state);

/// C₂₁·C₁₂(H): controlled-Hadamard 1→2 first, then CNOT 2→1.
CMatrix encode_unitary();

/// Encodes c₀|0⟩ + c₁|1⟩ with an ancilla in |0⟩ by running the gates.
/// Result: c₀|00⟩ + c₁(|01⟩ − |10⟩)/√2. Throws NotNormalized unless
/// |c₀|² + |c₁|² = 1 to 1e-12.
CVector encode_two_bit(Complex c0, Complex c1);

struct DecodedQubit {
  Complex c0;
  Complex c1;
  double ancilla_residual = 0.0;  ///< probability weight left on ancilla |1⟩
};

/// Runs CNOT 2→1 then controlled-Hadamard 1→2 and reads off the amplitudes
/// of |00⟩ and |10⟩.
DecodedQubit decode_two_bit(const CVector& state);

}  // namespace qeac
