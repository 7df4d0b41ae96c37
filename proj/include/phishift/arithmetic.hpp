#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace phishift {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Raised when a request would exceed a configured memory or search budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checked arithmetic. Every product in the kappa and witness paths goes
// through these so that a result never silently wraps.
inline u64 checked_mul(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("64-bit overflow in multiplication");
  }
  return out;
}

inline u64 checked_add(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("64-bit overflow in addition");
  }
  return out;
}

inline u64 narrow_u64(u128 v) {
  if (v > std::numeric_limits<u64>::max()) {
    throw std::overflow_error("value does not fit in 64 bits");
  }
  return static_cast<u64>(v);
}

std::string to_string(u128 v);

u64 gcd(u64 a, u64 b);

/// Deterministic for every 64-bit input (Miller-Rabin with the first
/// twelve primes as bases, after trial division by small primes).
bool is_prime(u64 n);

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime decomposition of a positive integer. Primes are strictly
/// increasing; the empty factorization represents 1.
class Factorization {
 public:
  Factorization() = default;

  /// Validates the invariants (sorted, prime, positive exponents).
  explicit Factorization(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  std::size_t size() const { return factors_.size(); }

  /// The represented integer; throws std::overflow_error past 64 bits.
  u64 value() const;

  /// Factorization of the product of the two represented integers.
  Factorization operator*(const Factorization& other) const;

  bool divides(u64 n) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> factors_;
};

/// Smallest-prime-factor table over [2, limit]. Immutable after
/// construction, so one table may be shared by concurrent readers.
class SpfTable {
 public:
  /// Entries allowed before build_spf raises ResourceError (1 GiB of u32).
  static constexpr u64 kDefaultMaxLimit = u64{1} << 28;

  u64 limit() const { return limit_; }
  bool covers(u64 n) const { return n >= 2 && n <= limit_; }

  /// Precondition: covers(n).
  u64 spf(u64 n) const { return spf_[n]; }

  Factorization factorize(u64 n) const;
  u64 radical(u64 n) const;

 private:
  friend SpfTable build_spf(u64 limit, u64 max_limit);

  u64 limit_ = 0;
  std::vector<std::uint32_t> spf_;
};

SpfTable build_spf(u64 limit, u64 max_limit = SpfTable::kDefaultMaxLimit);

/// Total for n >= 1 (n == 0 throws std::invalid_argument). Uses the sieve
/// when it covers n, otherwise trial division followed by Pollard-Brent rho
/// on the remaining cofactor. Every reported prime is certified by is_prime.
Factorization factorize(u64 n, const SpfTable* hint = nullptr);

/// Factorization of the product of `parts`, each part factored on its own.
/// Lets callers factor products wider than 64 bits when the parts are known.
Factorization factorize_product(std::span<const u64> parts,
                                const SpfTable* hint = nullptr);

u64 radical(const Factorization& f);
u64 euler_phi(const Factorization& f);

inline u64 radical(u64 n) { return radical(factorize(n)); }
inline u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

/// Primes <= limit by a plain sieve of Eratosthenes.
std::vector<u64> primes_up_to(u64 limit);

}  // namespace phishift
