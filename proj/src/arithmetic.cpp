#include "phishift/arithmetic.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace phishift {

namespace {

constexpr std::array<std::uint32_t, 25> kSmallPrimes = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Trial division bound used by factorize before switching to rho.
constexpr u64 kTrialLimit = 1u << 12;

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// n odd, n > 97; d * 2^s = n - 1.
bool strong_probable_prime(u64 n, u64 base, u64 d, unsigned s) {
  u64 x = pow_mod(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n, trying polynomial constants c = 1, 2, ... deterministically.
u64 rho_factor(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 block = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += block;
      }
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const u64 f = rho_factor(n);
  split_into(f, out);
  split_into(n / f, out);
}

Factorization from_map(const std::map<u64, unsigned>& m) {
  std::vector<PrimePower> factors;
  factors.reserve(m.size());
  for (const auto& [p, e] : m) factors.push_back({p, e});
  return Factorization(std::move(factors));
}

}  // namespace

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (const u64 p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven deterministic set below 3.3e24.
  for (const u64 base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!strong_probable_prime(n, base, d, s)) return false;
  }
  return true;
}

Factorization::Factorization(std::vector<PrimePower> factors)
    : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& pp = factors_[i];
    if (pp.exponent == 0) {
      throw std::invalid_argument("factorization exponent must be positive");
    }
    if (i > 0 && factors_[i - 1].prime >= pp.prime) {
      throw std::invalid_argument("factorization primes must increase");
    }
    if (!is_prime(pp.prime)) {
      throw std::invalid_argument("factorization entry " +
                                  std::to_string(pp.prime) + " is not prime");
    }
  }
}

u64 Factorization::value() const {
  u64 v = 1;
  for (const auto& [p, e] : factors_) {
    for (unsigned i = 0; i < e; ++i) v = checked_mul(v, p);
  }
  return v;
}

Factorization Factorization::operator*(const Factorization& other) const {
  std::vector<PrimePower> merged;
  merged.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() ||
        (a != factors_.end() && a->prime < b->prime)) {
      merged.push_back(*a++);
    } else if (a == factors_.end() || b->prime < a->prime) {
      merged.push_back(*b++);
    } else {
      merged.push_back({a->prime, a->exponent + b->exponent});
      ++a;
      ++b;
    }
  }
  Factorization out;
  out.factors_ = std::move(merged);
  return out;
}

bool Factorization::divides(u64 n) const {
  if (n == 0) return true;
  for (const auto& [p, e] : factors_) {
    for (unsigned i = 0; i < e; ++i) {
      if (n % p != 0) return false;
      n /= p;
    }
  }
  return true;
}

Factorization SpfTable::factorize(u64 n) const {
  std::vector<PrimePower> factors;
  while (n > 1) {
    const u64 p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.push_back({p, e});
  }
  return Factorization(std::move(factors));
}

u64 SpfTable::radical(u64 n) const {
  u64 rad = 1;
  while (n > 1) {
    const u64 p = spf_[n];
    rad *= p;
    while (n % p == 0) n /= p;
  }
  return rad;
}

SpfTable build_spf(u64 limit, u64 max_limit) {
  if (limit < 2) throw std::invalid_argument("spf limit must be at least 2");
  if (limit > max_limit ||
      limit >= std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceError("spf limit " + std::to_string(limit) +
                        " exceeds the memory budget of " +
                        std::to_string(max_limit) + " entries");
  }
  SpfTable table;
  table.limit_ = limit;
  table.spf_.assign(limit + 1, 0);
  auto& spf = table.spf_;
  for (u64 i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    spf[i] = static_cast<std::uint32_t>(i);
    if (i > limit / i) continue;
    for (u64 j = i * i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return table;
}

Factorization factorize(u64 n, const SpfTable* hint) {
  if (n == 0) throw std::invalid_argument("cannot factorize 0");
  if (hint != nullptr && hint->covers(n)) return hint->factorize(n);

  std::map<u64, unsigned> found;
  for (u64 p = 2; p < kTrialLimit && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++found[p];
      n /= p;
    }
  }
  split_into(n, found);
  return from_map(found);
}

Factorization factorize_product(std::span<const u64> parts,
                                const SpfTable* hint) {
  Factorization out;
  for (const u64 part : parts) out = out * factorize(part, hint);
  return out;
}

u64 radical(const Factorization& f) {
  u64 rad = 1;
  for (const auto& pp : f.factors()) rad = checked_mul(rad, pp.prime);
  return rad;
}

u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (const auto& [p, e] : f.factors()) {
    phi = checked_mul(phi, p - 1);
    for (unsigned i = 1; i < e; ++i) phi = checked_mul(phi, p);
  }
  return phi;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i > limit / i) continue;
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace phishift
