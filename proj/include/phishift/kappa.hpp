#pragma once

#include <cstddef>
#include <vector>

#include "phishift/arithmetic.hpp"

namespace phishift {

inline constexpr std::size_t kDefaultFamilySize = 50;

/// One ordered pair k1 > k2 >= 0 of the family {k*d + 1} with every
/// quantity the shift construction needs.
struct PairCandidate {
  u64 d = 0;
  u64 k1 = 0;
  u64 k2 = 0;
  u64 a1 = 0;   // k1*d + 1
  u64 a2 = 0;   // k2*d + 1
  u64 g = 0;    // gcd(a1, a2)
  u64 a1p = 0;  // a1 / g
  u64 a2p = 0;  // a2 / g
  u64 s = 0;    // rad(a1p * a2p)
  u64 pair_value = 0;  // d*(k1 - k2)/g * rad(a1*a2/g)
  u64 pair_h = 0;      // s * (a1p - a2p)

  friend bool operator==(const PairCandidate&, const PairCandidate&) = default;
};

struct KappaRow {
  u64 d = 0;
  u64 kappa = 0;
  PairCandidate argmax;
  u64 trivial_bound = 0;
  std::size_t family_size = kDefaultFamilySize;

  friend bool operator==(const KappaRow&, const KappaRow&) = default;
};

/// Throws std::invalid_argument unless d >= 1 and k1 > k2.
PairCandidate pair_candidate(u64 d, u64 k1, u64 k2);

/// Same result, with radicals read from a sieve covering k1*d + 1.
PairCandidate pair_candidate(u64 d, u64 k1, u64 k2, const SpfTable& spf);

/// (f-1) * d * ((f-2)d + 1) * ((f-1)d + 1); for f = 50 this is
/// 49d(48d+1)(49d+1).
u64 trivial_bound(u64 d, std::size_t family_size = kDefaultFamilySize);

/// Maximum of pair_value over 0 <= k2 < k1 < family_size. Ties go to the
/// lexicographically smallest (k1, k2).
KappaRow kappa(u64 d, std::size_t family_size = kDefaultFamilySize);

/// kappa evaluated with an existing sieve; spf must cover (f-1)d + 1.
KappaRow kappa(u64 d, std::size_t family_size, const SpfTable& spf);

/// kappa by factoring every a1*a2/g on its own, without a sieve.
KappaRow kappa_naive(u64 d, std::size_t family_size = kDefaultFamilySize);

/// Rows for d_from..d_to ascending. One sieve is shared by all workers;
/// the result does not depend on `jobs`.
std::vector<KappaRow> kappa_table(u64 d_from, u64 d_to,
                                  std::size_t family_size = kDefaultFamilySize,
                                  unsigned jobs = 1);

}  // namespace phishift
