#include "qeac/rep_theory.hpp"

#include <cmath>
#include <numbers>

#include "qeac/errors.hpp"

namespace qeac {

namespace {

void check_positive(int L) {
  if (L < 1) throw InvalidArgument("qubit count must be at least 1");
}

BigInt lookup(const std::map<int, BigInt>& m, int two_j) {
  const auto it = m.find(two_j);
  return it == m.end() ? BigInt(0) : it->second;
}

// n_j(2l+1) = n_{j+½}(2l) + n_{j−½}(2l),  j = ½ … l+½.
std::map<int, BigInt> couple_odd(const std::map<int, BigInt>& even, int l) {
  std::map<int, BigInt> out;
  for (int two_j = 1; two_j <= 2 * l + 1; two_j += 2) {
    BigInt n = lookup(even, two_j + 1) + lookup(even, two_j - 1);
    if (n != 0) out[two_j] = n;
  }
  return out;
}

// n_j(2l+2) = 2n_j(2l) + n_{j−1}(2l) + n_{j+1}(2l) for j ≥ 1. D₀ only
// arises from D_½ ⊗ D_½, so its term is n₀(2l) + n₁(2l).
std::map<int, BigInt> couple_even(const std::map<int, BigInt>& even, int l) {
  std::map<int, BigInt> out;
  for (int two_j = 0; two_j <= 2 * (l + 1); two_j += 2) {
    BigInt n = two_j == 0 ? lookup(even, 0) + lookup(even, 2)
                          : 2 * lookup(even, two_j) + lookup(even, two_j - 2) + lookup(even, two_j + 2);
    if (n != 0) out[two_j] = n;
  }
  return out;
}

}  // namespace

BigInt IrrepTable::multiplicity(int two_j) const { return lookup(multiplicities, two_j); }

BigInt IrrepTable::dimension() const {
  BigInt d = 0;
  for (const auto& [two_j, n] : multiplicities) d += n * (two_j + 1);
  return d;
}

BigInt IrrepTable::irrep_count() const {
  BigInt c = 0;
  for (const auto& entry : multiplicities) c += entry.second;
  return c;
}

IrrepTable irrep_multiplicities(int L) {
  check_positive(L);
  if (L == 1) return IrrepTable{1, {{1, BigInt(1)}}};
  std::map<int, BigInt> even{{2, BigInt(1)}, {0, BigInt(1)}};  // D_½ ⊗ D_½ = D₁ ⊕ D₀
  int l = 1;
  while (2 * (l + 1) <= L) {
    even = couple_even(even, l);
    ++l;
  }
  if (L % 2 == 0) return IrrepTable{L, even};
  return IrrepTable{L, couple_odd(even, l)};
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt catalan_multiplicity(int l) {
  if (l < 1) throw InvalidArgument("catalan_multiplicity requires l ≥ 1");
  BigInt num = 1;
  for (int i = 2; i <= 2 * l; ++i) num *= i;
  BigInt den = 1;
  for (int i = 2; i <= l; ++i) den *= i;
  return num / (den * den * (l + 1));
}

BigInt dark_count(int L) {
  check_positive(L);
  const BigInt closed = binomial(L, (L + 1) / 2);
  BigInt recursive;
  if (L == 1) {
    recursive = 1;
  } else {
    recursive = 2;
    for (int size = 2; size < L; ++size) {
      if (size % 2 == 0)
        recursive = 2 * recursive - catalan_multiplicity(size / 2);
      else
        recursive = 2 * recursive;
    }
  }
  if (recursive != closed)
    throw InternalMismatch("dark-count recursion " + recursive.str() + " differs from binomial " +
                           closed.str() + " at L = " + std::to_string(L));
  return closed;
}

double efficiency(int L) {
  check_positive(L);
  const int k = (L + 1) / 2;
  const double ln_binom = std::lgamma(L + 1.0) - std::lgamma(k + 1.0) - std::lgamma(L - k + 1.0);
  return ln_binom / std::numbers::ln2 / L;
}

double efficiency_asymptote(int L) {
  check_positive(L);
  return 1.0 - std::log2(std::numbers::pi * L / 2.0) / (2.0 * L);
}

std::string format_spin(int two_j) {
  if (two_j % 2 == 0) return std::to_string(two_j / 2);
  return std::to_string(two_j) + "/2";
}

}  // namespace qeac
