#include <doctest.h>

#include "oracle.hpp"
#include "phishift/kappa.hpp"
#include "published_kappa.hpp"

using namespace phishift;

TEST_CASE("pair_candidate examples") {
  const auto p = pair_candidate(2, 48, 23);
  CHECK(p.a1 == 97);
  CHECK(p.a2 == 47);
  CHECK(p.g == 1);
  CHECK(p.a1p == 97);
  CHECK(p.a2p == 47);
  CHECK(p.s == 4559);
  CHECK(p.pair_value == 227950);
  CHECK(p.pair_h == 227950);

  const auto q = pair_candidate(3, 48, 24);
  CHECK(q.a1 == 145);
  CHECK(q.a2 == 73);
  CHECK(q.g == 1);
  CHECK(q.pair_value == 762120);
  CHECK(q.pair_value == 72 * oracle::radical_trial(145 * 73));

  const auto t = pair_candidate(1, 1, 0);
  CHECK(t.a1 == 2);
  CHECK(t.a2 == 1);
  CHECK(t.pair_value == 2);
  // s = rad(2 * 1) = 2, so h = s * (a1' - a2') = 2.
  CHECK(t.s == 2);
  CHECK(t.pair_h == 2);

  CHECK_THROWS_AS(pair_candidate(2, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(pair_candidate(2, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(pair_candidate(0, 2, 1), std::invalid_argument);
}

TEST_CASE("pair with a nontrivial gcd") {
  // d = 2, k1 = 7, k2 = 1: a1 = 15, a2 = 3, g = 3.
  const auto p = pair_candidate(2, 7, 1);
  CHECK(p.g == 3);
  CHECK(p.a1p == 5);
  CHECK(p.a2p == 1);
  CHECK(p.s == 5);
  CHECK(p.pair_value == 2 * 6 / 3 * oracle::radical_trial(15 * 3 / 3));
  CHECK(p.pair_h == 5 * 4);
  CHECK(p.pair_h < p.pair_value);
}

TEST_CASE("pair invariants for every pair, d <= 1000") {
  const SpfTable spf = build_spf(49 * 1000 + 1);
  for (u64 d = 1; d <= 1000; ++d) {
    const u64 bound = trivial_bound(d);
    for (u64 k1 = 1; k1 < 50; ++k1) {
      for (u64 k2 = 0; k2 < k1; ++k2) {
        const auto c = pair_candidate(d, k1, k2, spf);
        REQUIRE((k1 - k2) % c.g == 0);
        REQUIRE(gcd(c.g, d) == 1);
        REQUIRE(c.pair_value % d == 0);
        REQUIRE(c.pair_h % d == 0);
        REQUIRE(c.pair_h <= c.pair_value);
        REQUIRE(c.pair_value <= bound);
        REQUIRE(c.a1p > c.a2p);
        REQUIRE(c.a1p * c.g == c.a1);
        REQUIRE(c.a2p * c.g == c.a2);
        // rad(a1 a2 / g) == rad(a1 a2), through the sieve on each factor.
        REQUIRE(spf.radical(c.a1) * spf.radical(c.a2) / (c.g == 1 ? 1 : spf.radical(c.g)) ==
                c.pair_value / (c.a1p - c.a2p));
      }
    }
  }
}

TEST_CASE("sieve path matches plain factorization for sampled pairs") {
  const SpfTable spf = build_spf(49 * 300 + 1);
  for (u64 d = 1; d <= 300; d += 7) {
    for (u64 k1 = 1; k1 < 50; k1 += 3) {
      for (u64 k2 = 0; k2 < k1; k2 += 2) {
        const auto fast = pair_candidate(d, k1, k2, spf);
        const auto slow = pair_candidate(d, k1, k2);
        REQUIRE(fast == slow);
        REQUIRE(oracle::radical_trial(fast.a1 * fast.a2 / fast.g) ==
                oracle::radical_trial(fast.a1 * fast.a2));
      }
    }
  }
}

TEST_CASE("trivial_bound") {
  CHECK(trivial_bound(2) == 941094);
  CHECK(trivial_bound(2) == 98 * 97 * 99);
  CHECK(trivial_bound(1) == 120050);
  CHECK(trivial_bound(1, 2) == 1 * 1 * 1 * 2);
  CHECK_THROWS_AS(trivial_bound(0), std::invalid_argument);
}

TEST_CASE("kappa examples") {
  CHECK(kappa(2).kappa == 227950);
  CHECK(kappa(51).kappa == 3665785650ull);
  CHECK(kappa(25).kappa == 460516250);
  CHECK(kappa(2).kappa < trivial_bound(2));
  const auto tiny = kappa(1, 2);
  CHECK(tiny.kappa == 2);
  CHECK(tiny.argmax.k1 == 1);
  CHECK(tiny.argmax.k2 == 0);
  CHECK_THROWS_AS(kappa(0), std::invalid_argument);
  CHECK_THROWS_AS(kappa(2, 1), std::invalid_argument);
}

TEST_CASE("kappa matches the formula oracle, argmax included") {
  for (u64 d = 1; d <= 60; ++d) {
    const auto row = kappa(d);
    const auto expected = oracle::kappa_formula(d);
    REQUIRE(row.kappa == static_cast<u64>(expected.value));
    CHECK(row.argmax.k1 == expected.k1);
    CHECK(row.argmax.k2 == expected.k2);
    CHECK(row.kappa == row.argmax.pair_value);
    CHECK(row.kappa < row.trivial_bound);
  }
  for (const std::size_t f : {2u, 3u, 7u, 20u}) {
    for (u64 d = 1; d <= 10; ++d) {
      CHECK(kappa(d, f).kappa == static_cast<u64>(oracle::kappa_formula(d, f).value));
    }
  }
}

TEST_CASE("sieve kappa equals naive kappa for d <= 200") {
  for (u64 d = 1; d <= 200; ++d) REQUIRE(kappa(d) == kappa_naive(d));
}

TEST_CASE("kappa_table reproduces the published values") {
  const auto rows = kappa_table(2, 51);
  REQUIRE(rows.size() == 50);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [d, printed] = published::kKappaTable[i];
    CHECK(rows[i].d == d);
    CHECK(rows[i].kappa == published::normalize(printed));
  }
  CHECK(published::normalize("12'0877'440") == 120877440);
}

TEST_CASE("kappa_table structure") {
  const auto single = kappa_table(2, 2);
  REQUIRE(single.size() == 1);
  CHECK(single[0].kappa == 227950);
  CHECK_THROWS_AS(kappa_table(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(kappa_table(0, 4), std::invalid_argument);

  const auto serial = kappa_table(1, 120, 50, 1);
  CHECK(kappa_table(1, 120, 50, 4) == serial);
  CHECK(kappa_table(1, 120, 50, 8) == serial);
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == kappa(i + 1));
}

TEST_CASE("kappa is not monotone") {
  CHECK(kappa(35).kappa < kappa(34).kappa);
  CHECK(kappa(38).kappa < kappa(37).kappa);
  CHECK(kappa(51).kappa < kappa(50).kappa);
}

TEST_CASE("kappa overflow is detected") {
  CHECK_NOTHROW(kappa(40'000));
  CHECK_THROWS_AS(trivial_bound(100'000), std::overflow_error);
}
