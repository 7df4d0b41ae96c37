#pragma once

// Slow reference implementations for the tests. Nothing here calls into the
// library, so each check compares two independent routes.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

inline std::vector<bool> eratosthenes(u64 limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (u64 i = 2; i * i <= limit; ++i) {
    if (!prime[i]) continue;
    for (u64 j = i * i; j <= limit; j += i) prime[j] = false;
  }
  return prime;
}

inline std::vector<std::pair<u64, unsigned>> factor_trial(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline u64 radical_trial(u64 n) {
  u64 r = 1;
  for (const auto& [p, e] : factor_trial(n)) r *= p;
  return r;
}

inline u64 phi_count(u64 n) {
  u64 c = 0;
  for (u64 m = 1; m <= n; ++m) {
    if (std::gcd(m, n) == 1) ++c;
  }
  return c;
}

inline u64 phi_trial(u64 n) {
  u64 phi = 1;
  for (const auto& [p, e] : factor_trial(n)) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

inline bool squarefree(u64 n) {
  for (const auto& [p, e] : factor_trial(n)) {
    if (e > 1) return false;
  }
  return true;
}

/// kappa straight from its defining formula, maximizing over all ordered
/// and unordered pairs with signed arithmetic.
struct KappaOracle {
  long long value = 0;
  u64 k1 = 0;
  u64 k2 = 0;
};

inline KappaOracle kappa_formula(u64 d, u64 family_size = 50) {
  KappaOracle best;
  for (u64 k1 = 0; k1 < family_size; ++k1) {
    for (u64 k2 = 0; k2 < family_size; ++k2) {
      const u64 a1 = k1 * d + 1, a2 = k2 * d + 1;
      const u64 g = std::gcd(a1, a2);
      const long long diff = static_cast<long long>(k1) - static_cast<long long>(k2);
      const long long v = static_cast<long long>(d) * diff / static_cast<long long>(g) *
                          static_cast<long long>(radical_trial(a1 * a2 / g));
      if (v > best.value) best = {v, k1, k2};
    }
  }
  return best;
}

}  // namespace oracle
