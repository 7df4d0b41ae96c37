#include "phishift/kappa.hpp"

#include <stdexcept>
#include <string>
#include <tuple>

#include "phishift/parallel.hpp"

namespace phishift {

namespace {

void check_pair_args(u64 d, u64 k1, u64 k2) {
  if (d == 0) throw std::invalid_argument("d must be at least 1");
  if (k1 <= k2) {
    throw std::invalid_argument("pair requires k1 > k2 (got k1=" +
                                std::to_string(k1) + ", k2=" + std::to_string(k2) + ")");
  }
}

void check_family_args(u64 d, std::size_t family_size) {
  if (d == 0) throw std::invalid_argument("d must be at least 1");
  if (family_size < 2) throw std::invalid_argument("family size must be at least 2");
}

PairCandidate base_pair(u64 d, u64 k1, u64 k2) {
  PairCandidate c;
  c.d = d;
  c.k1 = k1;
  c.k2 = k2;
  c.a1 = checked_add(checked_mul(k1, d), 1);
  c.a2 = checked_add(checked_mul(k2, d), 1);
  c.g = gcd(c.a1, c.a2);
  c.a1p = c.a1 / c.g;
  c.a2p = c.a2 / c.g;
  return c;
}

// a1p - a2p == d*(k1 - k2)/g exactly.
void finish_pair(PairCandidate& c, u64 rad_product) {
  const u64 spread = c.a1p - c.a2p;
  c.pair_value = checked_mul(spread, rad_product);
  c.pair_h = checked_mul(spread, c.s);
}

bool better(const PairCandidate& cand, const PairCandidate& best) {
  // Candidates arrive in lexicographic (k1, k2) order, so strict > keeps
  // the smallest pair on ties.
  return cand.pair_value > best.pair_value;
}

template <typename MakePair>
KappaRow maximize(u64 d, std::size_t family_size, MakePair make_pair) {
  KappaRow row;
  row.d = d;
  row.family_size = family_size;
  row.trivial_bound = trivial_bound(d, family_size);
  bool first = true;
  for (u64 k1 = 1; k1 < family_size; ++k1) {
    for (u64 k2 = 0; k2 < k1; ++k2) {
      PairCandidate c = make_pair(k1, k2);
      if (first || better(c, row.argmax)) {
        row.argmax = c;
        first = false;
      }
    }
  }
  row.kappa = row.argmax.pair_value;
  return row;
}

}  // namespace

PairCandidate pair_candidate(u64 d, u64 k1, u64 k2) {
  check_pair_args(d, k1, k2);
  PairCandidate c = base_pair(d, k1, k2);
  c.s = radical(factorize(checked_mul(c.a1p, c.a2p)));
  finish_pair(c, radical(factorize(checked_mul(c.a1, c.a2p))));
  return c;
}

PairCandidate pair_candidate(u64 d, u64 k1, u64 k2, const SpfTable& spf) {
  check_pair_args(d, k1, k2);
  PairCandidate c = base_pair(d, k1, k2);
  if (!spf.covers(c.a1)) {
    throw std::invalid_argument("sieve does not cover a1 = " + std::to_string(c.a1));
  }
  // a1p and a2p are coprime, and rad(xy) = rad(x) rad(y) / rad(gcd(x, y)).
  c.s = checked_mul(spf.radical(c.a1p), spf.radical(c.a2p));
  const u64 rad_g = c.g == 1 ? 1 : spf.radical(c.g);
  finish_pair(c, checked_mul(spf.radical(c.a1), spf.radical(c.a2)) / rad_g);
  return c;
}

u64 trivial_bound(u64 d, std::size_t family_size) {
  check_family_args(d, family_size);
  const u64 f = family_size;
  const u64 top = checked_add(checked_mul(f - 1, d), 1);
  const u64 next = checked_add(checked_mul(f - 2, d), 1);
  return checked_mul(checked_mul(checked_mul(f - 1, d), next), top);
}

KappaRow kappa(u64 d, std::size_t family_size, const SpfTable& spf) {
  check_family_args(d, family_size);
  return maximize(d, family_size,
                  [&](u64 k1, u64 k2) { return pair_candidate(d, k1, k2, spf); });
}

KappaRow kappa(u64 d, std::size_t family_size) {
  check_family_args(d, family_size);
  const u64 top = checked_add(checked_mul(family_size - 1, d), 1);
  const SpfTable spf = build_spf(std::max<u64>(top, 2));
  return kappa(d, family_size, spf);
}

KappaRow kappa_naive(u64 d, std::size_t family_size) {
  check_family_args(d, family_size);
  return maximize(d, family_size,
                  [&](u64 k1, u64 k2) { return pair_candidate(d, k1, k2); });
}

std::vector<KappaRow> kappa_table(u64 d_from, u64 d_to, std::size_t family_size,
                                  unsigned jobs) {
  if (d_from == 0) throw std::invalid_argument("d must be at least 1");
  if (d_from > d_to) throw std::invalid_argument("empty d range");
  check_family_args(d_from, family_size);
  const u64 top = checked_add(checked_mul(family_size - 1, d_to), 1);
  const SpfTable spf = build_spf(std::max<u64>(top, 2));

  std::vector<KappaRow> rows(d_to - d_from + 1);
  parallel_slices(rows.size(), jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      rows[i] = kappa(d_from + i, family_size, spf);
    }
  });
  return rows;
}

}  // namespace phishift
