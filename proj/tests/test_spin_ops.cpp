#include <doctest.h>

#include <cmath>

#include "qeac/dark_codes.hpp"
#include "qeac/spin_ops.hpp"

using namespace qeac;

namespace {

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("site operators act on the addressed qubit only") {
  CHECK(site_operator(1, 1, SiteKind::minus) * ket("1") == ket("0"));
  CHECK((site_operator(1, 1, SiteKind::minus) * ket("0")).norm() == 0.0);

  const CMatrix m2 = site_operator(2, 2, SiteKind::minus);
  CHECK(m2 * ket("01") == ket("00"));
  CHECK((m2 * ket("10")).norm() == 0.0);

  const CMatrix z = site_operator(1, 1, SiteKind::z);
  CHECK(z * ket("1") == CVector(0.5 * ket("1")));
  CHECK(z * ket("0") == CVector(-0.5 * ket("0")));

  for (int l = 1; l <= 3; ++l)
    CHECK(site_operator(3, l, SiteKind::plus) == CMatrix(site_operator(3, l, SiteKind::minus).adjoint()));
}

TEST_CASE("site index validation") {
  CHECK_THROWS_AS(site_operator(3, 0, SiteKind::z), SiteOutOfRange);
  CHECK_THROWS_AS(site_operator(3, 4, SiteKind::plus), SiteOutOfRange);
  CHECK_THROWS_AS(collective_operators(13), TooManyQubits);
}

TEST_CASE("collective operators on small registers") {
  const auto ops2 = collective_operators(2);
  CHECK(ops2.s_minus * ket("11") == CVector(ket("01") + ket("10")));
  for (int L = 1; L <= 5; ++L) {
    const auto ops = collective_operators(L);
    CHECK((ops.s_minus * ket(std::string(static_cast<std::size_t>(L), '0'))).norm() == 0.0);
  }
  const auto ops1 = collective_operators(1);
  CHECK(max_abs(ops1.s_squared - 0.75 * CMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("su(2) algebra holds for L ≤ 8") {
  for (int L = 1; L <= 8; ++L) {
    CAPTURE(L);
    const auto ops = collective_operators(L);
    CHECK(ops.s_plus == CMatrix(ops.s_minus.adjoint()));
    CHECK(max_abs(commutator(ops.s_z, ops.s_plus) - ops.s_plus) <= 1e-12);
    CHECK(max_abs(commutator(ops.s_z, ops.s_minus) + ops.s_minus) <= 1e-12);
    CHECK(max_abs(commutator(ops.s_plus, ops.s_minus) - 2.0 * ops.s_z) <= 1e-12);
    CHECK(max_abs(commutator(ops.s_squared, ops.s_minus)) <= 1e-12);
  }
}

TEST_CASE("S² spectrum consists of j(j+1) values") {
  for (int L = 1; L <= 7; ++L) {
    CAPTURE(L);
    const auto es = hermitian_eigensystem(collective_operators(L).s_squared);
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
      bool allowed = false;
      for (int two_j = L % 2; two_j <= L; two_j += 2)
        allowed = allowed || std::abs(es.values(k) - 0.25 * two_j * (two_j + 2)) <= 1e-9;
      CHECK(allowed);
    }
  }
}

TEST_CASE("apply_collective_lowering agrees with the dense operator") {
  for (int L = 1; L <= 6; ++L) {
    const auto ops = collective_operators(L);
    CVector psi = CVector::LinSpaced(Eigen::Index{1} << L, 0.0, 1.0);
    psi(0) = Complex(0.3, -0.2);
    CHECK((apply_collective_lowering(psi, L) - ops.s_minus * psi).norm() <= 1e-14);
  }
  CHECK_THROWS_AS(apply_collective_lowering(CVector::Zero(3), 2), DimensionMismatch);
}

TEST_CASE("excitation sectors partition the basis") {
  std::size_t total = 0;
  for (int k = 0; k <= 5; ++k) total += excitation_sector(5, k).size();
  CHECK(total == 32);
  CHECK(excitation_sector(3, 1) == std::vector<Eigen::Index>{1, 2, 4});
}
