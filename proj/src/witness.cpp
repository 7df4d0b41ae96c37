#include "phishift/witness.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <sstream>

#include "phishift/parallel.hpp"

namespace phishift {

namespace {

constexpr std::array<u64, 15> kWheelPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                              23, 29, 31, 37, 41, 43, 47};
constexpr u64 kWheelMax = 47;

// Residues of r modulo each wheel prime at which a*r + 1 is divisible by it.
class RWheel {
 public:
  RWheel(u64 a1p, u64 a2p) {
    for (std::size_t i = 0; i < kWheelPrimes.size(); ++i) {
      const u64 q = kWheelPrimes[i];
      for (u64 r = 0; r < q; ++r) {
        if ((a1p % q * r + 1) % q == 0 || (a2p % q * r + 1) % q == 0) {
          masks_[i] |= u64{1} << r;
        }
      }
    }
  }

  bool rejects(u64 r) const {
    for (std::size_t i = 0; i < kWheelPrimes.size(); ++i) {
      if ((masks_[i] >> (r % kWheelPrimes[i])) & 1) return true;
    }
    return false;
  }

 private:
  std::array<u64, kWheelPrimes.size()> masks_{};
};

void require_coprime(u64 d, u64 l) {
  if (l == 0) throw std::invalid_argument("l must be at least 1");
  if (gcd(d, l) != 1) {
    throw std::invalid_argument("d and l must be coprime (gcd(" + std::to_string(d) +
                                ", " + std::to_string(l) + ") = " +
                                std::to_string(gcd(d, l)) + ")");
  }
}

u64 search_floor(const PairCandidate& pair, u64 l, u64 r_start) {
  return std::max({r_start, pair.a1, l});
}

// Factorization of d*m as the merge of the two factorizations, checked
// against a direct factorization of the product when it fits in 64 bits.
Factorization factor_scaled(u64 d, u64 m, std::vector<std::string>& failures,
                            const char* label) {
  Factorization merged = factorize(d) * factorize(m);
  const u128 product = static_cast<u128>(d) * m;
  if (product <= std::numeric_limits<u64>::max()) {
    if (factorize(static_cast<u64>(product)) != merged) {
      failures.push_back(std::string("direct factorization of d*") + label +
                         " disagrees with merged factorization");
    }
  }
  return merged;
}

template <typename T>
void expect_eq(std::vector<std::string>& failures, const char* field, T stored,
               T expected) {
  if (stored != expected) {
    std::ostringstream os;
    os << field << ": stored " << stored << ", expected " << expected;
    failures.push_back(os.str());
  }
}

void expect(std::vector<std::string>& failures, bool condition, const char* what) {
  if (!condition) failures.emplace_back(what);
}

void verify_into(const Witness& w, std::vector<std::string>& failures) {
  if (w.d == 0 || w.l == 0) {
    failures.emplace_back("d and l must be positive");
    return;
  }
  if (w.family_size < 2) {
    failures.emplace_back("family_size must be at least 2");
    return;
  }
  expect(failures, gcd(w.d, w.l) == 1, "gcd(d, l) != 1");
  expect_eq(failures, "pair.d", w.pair.d, w.d);
  if (w.pair.k1 <= w.pair.k2 || w.pair.k1 >= w.family_size) {
    failures.emplace_back("pair indices outside 0 <= k2 < k1 < family_size");
    return;
  }
  if (w.strategy.kind == PairStrategy::Kind::fixed) {
    expect(failures, w.strategy.k1 == w.pair.k1 && w.strategy.k2 == w.pair.k2,
           "fixed strategy does not name the recorded pair");
  }

  // Independent recomputation of the pair, through plain factorization.
  const PairCandidate pc = pair_candidate(w.d, w.pair.k1, w.pair.k2);
  expect_eq(failures, "pair.a1", w.pair.a1, pc.a1);
  expect_eq(failures, "pair.a2", w.pair.a2, pc.a2);
  expect_eq(failures, "pair.g", w.pair.g, pc.g);
  expect_eq(failures, "pair.a1p", w.pair.a1p, pc.a1p);
  expect_eq(failures, "pair.a2p", w.pair.a2p, pc.a2p);
  expect_eq(failures, "pair.s", w.pair.s, pc.s);
  expect_eq(failures, "pair.pair_value", w.pair.pair_value, pc.pair_value);
  expect_eq(failures, "pair.pair_h", w.pair.pair_h, pc.pair_h);

  expect(failures, w.r > std::max(pc.a1, w.l), "r must exceed max(a1, l)");
  expect_eq(failures, "p1", w.p1, checked_add(checked_mul(pc.a1p, w.r), 1));
  expect_eq(failures, "p2", w.p2, checked_add(checked_mul(pc.a2p, w.r), 1));
  expect(failures, is_prime(w.p1), "p1 is not prime");
  expect(failures, is_prime(w.p2), "p2 is not prime");
  expect(failures, w.p1 != w.p2, "p1 == p2");
  expect(failures, w.p1 > w.d && w.p2 > w.d, "p1 and p2 must exceed d");

  const u64 ls = checked_mul(w.l, pc.s);
  expect_eq(failures, "m1", w.m1, checked_mul(checked_mul(pc.a2p, ls), w.p1));
  expect_eq(failures, "m2", w.m2, checked_mul(checked_mul(pc.a1p, ls), w.p2));
  expect_eq(failures, "h", w.h, pc.pair_h);
  expect_eq(failures, "n", w.n, std::min(w.m1, w.m2));

  const u64 lo = std::min(w.m1, w.m2);
  const u64 hi = std::max(w.m1, w.m2);
  expect(failures, hi - lo == checked_mul(w.l, w.h), "max(m1,m2) - min(m1,m2) != l*h");
  expect(failures, w.h % w.d == 0, "d does not divide h");
  const KappaRow row = kappa(w.d, w.family_size);
  expect(failures, w.h <= row.kappa, "h exceeds kappa(d)");
  if (w.strategy.kind == PairStrategy::Kind::argmax) {
    expect(failures, w.pair.k1 == row.argmax.k1 && w.pair.k2 == row.argmax.k2,
           "argmax strategy does not name the kappa-attaining pair");
  }

  expect(failures, gcd(w.d, pc.a1p) == 1, "gcd(d, a1') != 1");
  expect(failures, gcd(w.d, pc.a2p) == 1, "gcd(d, a2') != 1");
  expect(failures, gcd(w.d, pc.s) == 1, "gcd(d, s) != 1");
  expect(failures, gcd(w.d, w.m1) == 1, "gcd(d, m1) != 1");
  expect(failures, gcd(w.d, w.m2) == 1, "gcd(d, m2) != 1");
  if (w.m1 == 0 || w.m2 == 0 || w.n == 0) {
    failures.emplace_back("m1, m2 and n must be positive");
    return;
  }

  // Totient chain from factorizations of the stored values.
  const u64 phi_d = euler_phi(factorize(w.d));
  const u64 phi_dm1 = euler_phi(factor_scaled(w.d, w.m1, failures, "m1"));
  const u64 phi_dm2 = euler_phi(factor_scaled(w.d, w.m2, failures, "m2"));
  const u64 phi_d_phi_n = checked_mul(phi_d, euler_phi(factorize(w.n)));
  expect(failures, phi_dm1 == phi_dm2, "phi(d*m1) != phi(d*m2)");
  expect(failures, phi_d_phi_n == phi_dm1, "phi(d)*phi(n) != phi(d*n)");
  expect_eq(failures, "phi_common", w.phi_common, phi_dm1);

  // The multiplicative chain the construction predicts.
  const u64 phi_ls = euler_phi(factorize(ls));
  const u64 via_p1 = checked_mul(checked_mul(checked_mul(phi_d, pc.a2p), phi_ls), w.p1 - 1);
  const u64 via_p2 = checked_mul(checked_mul(checked_mul(phi_d, pc.a1p), phi_ls), w.p2 - 1);
  const u64 closed =
      checked_mul(checked_mul(checked_mul(checked_mul(phi_d, pc.a1p), pc.a2p), w.r), phi_ls);
  expect(failures, via_p1 == closed, "phi(d)*a2'*phi(ls)*phi(p1) != phi(d)*a1'*a2'*r*phi(ls)");
  expect(failures, via_p2 == closed, "phi(d)*a1'*phi(ls)*phi(p2) != phi(d)*a1'*a2'*r*phi(ls)");
  expect(failures, closed == phi_dm1, "closed-form totient disagrees with factorization");
}

}  // namespace

std::string_view to_string(PairStrategy::Kind kind) {
  switch (kind) {
    case PairStrategy::Kind::argmax: return "argmax";
    case PairStrategy::Kind::fixed: return "fixed";
    case PairStrategy::Kind::scan_best: return "scan_best";
  }
  return "unknown";
}

PairStrategy::Kind parse_strategy_kind(std::string_view s) {
  if (s == "argmax") return PairStrategy::Kind::argmax;
  if (s == "fixed") return PairStrategy::Kind::fixed;
  if (s == "scan_best" || s == "scan-best") return PairStrategy::Kind::scan_best;
  throw std::invalid_argument("unknown pair strategy: " + std::string(s));
}

std::vector<u64> find_r(const PairCandidate& pair, u64 l, u64 r_start, u64 r_limit,
                        unsigned jobs) {
  require_coprime(pair.d, l);
  const u64 floor = search_floor(pair, l, r_start);
  if (r_limit <= floor) return {};
  // Reject now rather than overflow inside the loop.
  checked_add(checked_mul(pair.a1p, r_limit), 1);

  const RWheel wheel(pair.a1p, pair.a2p);
  std::map<u64, std::vector<u64>> slices;
  std::mutex slices_mutex;
  parallel_slices(r_limit - floor, jobs, [&](std::size_t begin, std::size_t end) {
    std::vector<u64> local;
    for (u64 r = floor + 1 + begin; r <= floor + end; ++r) {
      const u64 p2 = pair.a2p * r + 1;
      // The wheel would wrongly reject a value equal to a wheel prime.
      if (p2 > kWheelMax && wheel.rejects(r)) continue;
      const u64 p1 = pair.a1p * r + 1;
      if (is_prime(p2) && is_prime(p1)) local.push_back(r);
    }
    std::lock_guard lock(slices_mutex);
    slices.emplace(begin, std::move(local));
  });

  std::vector<u64> out;
  for (auto& [begin, local] : slices) out.insert(out.end(), local.begin(), local.end());
  return out;
}

Witness build_witness(const PairCandidate& pair, u64 l, u64 r, std::size_t family_size,
                      std::optional<PairStrategy> strategy) {
  require_coprime(pair.d, l);
  if (pair.k1 >= family_size) {
    throw std::invalid_argument("pair index k1 outside the family");
  }
  if (r <= std::max(pair.a1, l)) {
    throw std::invalid_argument("r must exceed max(a1, l)");
  }
  Witness w;
  w.d = pair.d;
  w.l = l;
  w.family_size = family_size;
  w.strategy = strategy.value_or(PairStrategy::fixed(pair.k1, pair.k2));
  w.pair = pair;
  w.r = r;
  w.p1 = checked_add(checked_mul(pair.a1p, r), 1);
  w.p2 = checked_add(checked_mul(pair.a2p, r), 1);
  if (!is_prime(w.p1) || !is_prime(w.p2)) {
    throw std::invalid_argument("r = " + std::to_string(r) +
                                " does not give two primes");
  }
  const u64 ls = checked_mul(l, pair.s);
  w.m1 = checked_mul(checked_mul(pair.a2p, ls), w.p1);
  w.m2 = checked_mul(checked_mul(pair.a1p, ls), w.p2);
  w.h = pair.pair_h;
  w.n = std::min(w.m1, w.m2);
  w.phi_common = euler_phi(factorize(w.d) * factorize(w.m1));

  const auto report = verify_witness(w);
  if (!report.ok()) {
    std::string msg = "witness verification failed:";
    for (const auto& f : report.failures) msg += "\n  " + f;
    throw VerificationError(msg);
  }
  return w;
}

VerificationReport verify_witness(const Witness& w) {
  VerificationReport report;
  try {
    verify_into(w, report.failures);
  } catch (const std::exception& e) {
    report.failures.push_back(std::string("recomputation failed: ") + e.what());
  }
  return report;
}

PairCandidate select_pair(u64 d, u64 l, PairStrategy strategy,
                          const SearchOptions& options) {
  const std::size_t f = options.family_size;
  switch (strategy.kind) {
    case PairStrategy::Kind::argmax:
      return kappa(d, f).argmax;
    case PairStrategy::Kind::fixed:
      if (strategy.k1 >= f) {
        throw std::invalid_argument("k1 must be below the family size");
      }
      return pair_candidate(d, strategy.k1, strategy.k2);
    case PairStrategy::Kind::scan_best: {
      require_coprime(d, l);
      // One window (r0, r0 + scan_window] shared by every pair, above every a1.
      const u64 top = checked_add(checked_mul(f - 1, d), 1);
      const u64 r0 = std::max({top, l, options.r_start});
      const u64 r1 = checked_add(r0, options.scan_window);
      const SpfTable spf = build_spf(std::max<u64>(top, 2));
      PairCandidate best;
      std::size_t best_hits = 0;
      bool first = true;
      for (u64 k1 = 1; k1 < f; ++k1) {
        for (u64 k2 = 0; k2 < k1; ++k2) {
          PairCandidate c = pair_candidate(d, k1, k2, spf);
          const std::size_t hits = find_r(c, l, r0, r1, options.jobs).size();
          if (first || hits > best_hits) {
            best = c;
            best_hits = hits;
            first = false;
          }
        }
      }
      return best;
    }
  }
  throw std::invalid_argument("unknown pair strategy");
}

std::vector<Witness> stream_witnesses(u64 d, u64 l, std::size_t count,
                                      PairStrategy strategy,
                                      const SearchOptions& options) {
  if (d == 0) throw std::invalid_argument("d must be at least 1");
  require_coprime(d, l);
  if (count == 0) throw std::invalid_argument("count must be at least 1");
  const PairCandidate pair = select_pair(d, l, strategy, options);

  std::vector<Witness> out;
  u64 lo = search_floor(pair, l, options.r_start);
  u64 window = std::max<u64>(options.initial_window, 1);
  u64 scanned = 0;
  while (out.size() < count) {
    if (scanned >= options.max_candidates) {
      throw ResourceError("r search budget of " + std::to_string(options.max_candidates) +
                          " candidates exhausted after " + std::to_string(out.size()) +
                          " of " + std::to_string(count) + " witnesses");
    }
    const u64 width = std::min(window, options.max_candidates - scanned);
    const u64 hi = checked_add(lo, width);
    for (const u64 r : find_r(pair, l, lo, hi, options.jobs)) {
      out.push_back(build_witness(pair, l, r, options.family_size, strategy));
      if (out.size() == count) break;
    }
    scanned += width;
    lo = hi;
    window = window > std::numeric_limits<u64>::max() / 4 ? window : window * 4;
  }
  return out;
}

}  // namespace phishift
