#include <doctest.h>

#include <cmath>
#include <random>

#include "qeac/circuits.hpp"
#include "qeac/dark_codes.hpp"

using namespace qeac;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::pair<Complex, Complex> random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Complex a(g(rng), g(rng)), b(g(rng), g(rng));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

}  // namespace

TEST_CASE("controlled code-Hadamard follows the stated single-qubit map") {
  const CMatrix ch = gate_matrix({GateKind::chadamard, 1, 2, 2});
  CHECK((ch * ket("10") - CVector(kInvSqrt2 * (ket("11") - ket("10")))).norm() <= 1e-15);
  CHECK((ch * ket("11") - CVector(kInvSqrt2 * (ket("11") + ket("10")))).norm() <= 1e-15);
  CHECK(ch * ket("00") == ket("00"));
  CHECK(ch * ket("01") == ket("01"));
}

TEST_CASE("CNOT with control 2 and target 1") {
  const CMatrix cx = gate_matrix({GateKind::cnot, 2, 1, 2});
  CHECK(cx * ket("01") == ket("11"));
  CHECK(cx * ket("11") == ket("01"));
  CHECK(cx * ket("10") == ket("10"));
}

TEST_CASE("gates are unitary and the code-Hadamard is involutory") {
  for (int L = 2; L <= 6; ++L)
    for (int c = 1; c <= L; ++c)
      for (int t = 1; t <= L; ++t) {
        if (c == t) continue;
        for (GateKind kind : {GateKind::cnot, GateKind::chadamard}) {
          const CMatrix u = gate_matrix({kind, c, t, L});
          const auto dim = u.rows();
          CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(dim, dim)) <= 1e-12);
          CHECK(max_abs(u * u - CMatrix::Identity(dim, dim)) <= 1e-12);
        }
      }
  const CMatrix h = code_hadamard();
  CHECK(max_abs(h * h - CMatrix::Identity(2, 2)) <= 1e-15);
}

TEST_CASE("invalid gate sites") {
  CHECK_THROWS_AS(gate_matrix({GateKind::cnot, 1, 1, 2}), InvalidSites);
  CHECK_THROWS_AS(gate_matrix({GateKind::cnot, 0, 1, 2}), InvalidSites);
  CHECK_THROWS_AS(gate_matrix({GateKind::chadamard, 1, 3, 2}), InvalidSites);
}

TEST_CASE("two-bit encoding") {
  CHECK((encode_two_bit(1.0, 0.0) - ket("00")).norm() <= 1e-15);
  CHECK((encode_two_bit(0.0, 1.0) - CVector(kInvSqrt2 * (ket("01") - ket("10")))).norm() <= 1e-15);
  const CVector half = kInvSqrt2 * ket("00") + 0.5 * (ket("01") - ket("10"));
  CHECK((encode_two_bit(kInvSqrt2, kInvSqrt2) - half).norm() <= 1e-15);
  CHECK_THROWS_AS(encode_two_bit(1.0, 1.0), NotNormalized);
}

TEST_CASE("the reversed gate order does not reproduce the encoded state") {
  CVector input = CVector::Zero(4);
  input(0b10) = 1.0;
  const CVector wrong = gate_matrix({GateKind::chadamard, 1, 2, 2}) * (gate_matrix({GateKind::cnot, 2, 1, 2}) * input);
  CHECK((wrong - encode_two_bit(0.0, 1.0)).norm() > 0.5);
}

TEST_CASE("decode inverts encode and lands the ancilla in |0⟩") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [c0, c1] = random_qubit(rng);
    const CVector enc = encode_two_bit(c0, c1);
    const CVector closed = c0 * ket("00") + (c1 * kInvSqrt2) * (ket("01") - ket("10"));
    CHECK((enc - closed).norm() <= 1e-12);
    CHECK(dark_residual(enc, 2) <= 1e-12);
    const DecodedQubit d = decode_two_bit(enc);
    CHECK(std::abs(d.c0 - c0) <= 1e-12);
    CHECK(std::abs(d.c1 - c1) <= 1e-12);
    CHECK(d.ancilla_residual <= 1e-14);
  }
  const DecodedQubit g = decode_two_bit(ket("00"));
  CHECK(g.c0 == Complex(1.0));
  CHECK(g.c1 == Complex(0.0));
  CHECK(g.ancilla_residual == 0.0);
  const DecodedQubit s = decode_two_bit(kInvSqrt2 * (ket("01") - ket("10")));
  CHECK(std::abs(s.c0) <= 1e-15);
  CHECK(std::abs(s.c1 - 1.0) <= 1e-15);
  CHECK(s.ancilla_residual <= 1e-30);
  // outside the code space the ancilla picks up weight
  CHECK(decode_two_bit(ket("11")).ancilla_residual > 0.1);
}

TEST_CASE("encoder maps the data-qubit plane onto the two-qubit dark subspace") {
  const CMatrix u = encode_unitary();
  CMatrix inputs(4, 2);
  inputs.col(0) = ket("00");
  inputs.col(1) = ket("10");
  const CMatrix image = u * inputs;
  CHECK(max_abs(image.adjoint() * image - CMatrix::Identity(2, 2)) <= 1e-12);
  CHECK(subspace_equal(image, compute_dark_basis(2).vectors, 1e-12));
}
