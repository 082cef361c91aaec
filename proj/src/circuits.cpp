#include "qeac/circuits.hpp"

#include <cmath>
#include <string>

#include "qeac/spin_ops.hpp"

namespace qeac {

CMatrix code_hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  CMatrix m(2, 2);
  // columns are the images of |0⟩ and |1⟩
  m << -h, h,
        h, h;
  return m;
}

CMatrix gate_matrix(const GateOp& gate) {
  if (gate.L < 2 || gate.L > kMaxDenseQubits)
    throw InvalidSites("register size must be in 2.." + std::to_string(kMaxDenseQubits));
  if (gate.control < 1 || gate.control > gate.L || gate.target < 1 || gate.target > gate.L ||
      gate.control == gate.target)
    throw InvalidSites("control " + std::to_string(gate.control) + ", target " +
                       std::to_string(gate.target) + " invalid for L = " + std::to_string(gate.L));

  CMatrix single(2, 2);
  if (gate.kind == GateKind::cnot)
    single << 0, 1, 1, 0;
  else
    single = code_hadamard();

  const Eigen::Index dim = Eigen::Index{1} << gate.L;
  const unsigned cbit = site_bit(gate.L, gate.control);
  const unsigned tbit = site_bit(gate.L, gate.target);
  CMatrix u = CMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<unsigned>(b);
    if (!(ub & cbit)) {
      u(b, b) = 1.0;
      continue;
    }
    const int in = (ub & tbit) ? 1 : 0;
    for (int out = 0; out < 2; ++out) {
      const unsigned dest = out ? (ub | tbit) : (ub & ~tbit);
      u(static_cast<Eigen::Index>(dest), b) = single(out, in);
    }
  }
  return u;
}

CVector apply_circuit(std::initializer_list<GateOp> gates, const CVector& state) {
  CVector psi = state;
  for (const auto& g : gates) {
    if (psi.size() != (Eigen::Index{1} << g.L)) throw DimensionMismatch("state does not match register size");
    psi = gate_matrix(g) * psi;
  }
  return psi;
}

namespace {

constexpr GateOp kC12H{GateKind::chadamard, 1, 2, 2};
constexpr GateOp kC21{GateKind::cnot, 2, 1, 2};

}  // namespace

CMatrix encode_unitary() { return gate_matrix(kC21) * gate_matrix(kC12H); }

CVector encode_two_bit(Complex c0, Complex c1) {
  if (std::abs(std::norm(c0) + std::norm(c1) - 1.0) > 1e-12)
    throw NotNormalized("|c0|² + |c1|² must equal 1");
  CVector input = CVector::Zero(4);
  input(0b00) = c0;
  input(0b10) = c1;  // qubit 1 carries the data, ancilla qubit 2 in |0⟩
  return apply_circuit({kC12H, kC21}, input);
}

DecodedQubit decode_two_bit(const CVector& state) {
  if (state.size() != 4) throw DimensionMismatch("two-qubit state expected");
  const CVector out = apply_circuit({kC21, kC12H}, state);
  return DecodedQubit{out(0b00), out(0b10), std::norm(out(0b01)) + std::norm(out(0b11))};
}

}  // namespace qeac
