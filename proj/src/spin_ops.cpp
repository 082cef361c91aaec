#include "qeac/spin_ops.hpp"

#include <bit>
#include <string>

namespace qeac {

namespace {

void check_register(int L) {
  if (L < 1) throw InvalidArgument("qubit count must be at least 1");
  if (L > kMaxDenseQubits)
    throw TooManyQubits("L = " + std::to_string(L) + " exceeds the dense limit of " +
                        std::to_string(kMaxDenseQubits));
}

void check_site(int L, int site) {
  if (site < 1 || site > L)
    throw SiteOutOfRange("site " + std::to_string(site) + " outside 1.." + std::to_string(L));
}

}  // namespace

SparseCMatrix site_operator_sparse(int L, int site, SiteKind kind) {
  check_register(L);
  check_site(L, site);
  const Eigen::Index dim = Eigen::Index{1} << L;
  const unsigned bit = site_bit(L, site);
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index b = 0; b < dim; ++b) {
    const bool excited = (static_cast<unsigned>(b) & bit) != 0;
    switch (kind) {
      case SiteKind::minus:
        if (excited) entries.emplace_back(b ^ bit, b, 1.0);
        break;
      case SiteKind::plus:
        if (!excited) entries.emplace_back(b | bit, b, 1.0);
        break;
      case SiteKind::z:
        entries.emplace_back(b, b, excited ? 0.5 : -0.5);
        break;
    }
  }
  SparseCMatrix m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

CMatrix site_operator(int L, int site, SiteKind kind) {
  return CMatrix(site_operator_sparse(L, site, kind));
}

CollectiveOperators collective_operators(int L) {
  check_register(L);
  const Eigen::Index dim = Eigen::Index{1} << L;
  SparseCMatrix minus(dim, dim);
  SparseCMatrix z(dim, dim);
  for (int l = 1; l <= L; ++l) {
    minus += site_operator_sparse(L, l, SiteKind::minus);
    z += site_operator_sparse(L, l, SiteKind::z);
  }
  const SparseCMatrix plus = minus.adjoint();
  const SparseCMatrix casimir = 0.5 * (SparseCMatrix(plus * minus) + SparseCMatrix(minus * plus)) +
                                SparseCMatrix(z * z);
  return CollectiveOperators{L, CMatrix(plus), CMatrix(minus), CMatrix(z), CMatrix(casimir)};
}

CVector apply_collective_lowering(const CVector& psi, int L) {
  check_register(L);
  const Eigen::Index dim = Eigen::Index{1} << L;
  if (psi.size() != dim)
    throw DimensionMismatch("state has dimension " + std::to_string(psi.size()) + ", expected " +
                            std::to_string(dim));
  CVector out = CVector::Zero(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (psi(b) == Complex(0.0)) continue;
    for (int l = 1; l <= L; ++l) {
      const unsigned bit = site_bit(L, l);
      if (static_cast<unsigned>(b) & bit) out(b ^ bit) += psi(b);
    }
  }
  return out;
}

std::vector<Eigen::Index> excitation_sector(int L, int excitations) {
  std::vector<Eigen::Index> out;
  const Eigen::Index dim = Eigen::Index{1} << L;
  for (Eigen::Index b = 0; b < dim; ++b)
    if (std::popcount(static_cast<unsigned>(b)) == excitations) out.push_back(b);
  return out;
}

}  // namespace qeac
