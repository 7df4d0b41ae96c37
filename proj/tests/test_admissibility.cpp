#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "phishift/admissibility.hpp"

using namespace phishift;

namespace {

// Smallest p in {2, 3, 5, 7} dividing prod f_i(n) for every n in [0, 210).
std::optional<u64> brute_obstruction(const PolynomialFamily& fam) {
  for (const i64 p : {2, 3, 5, 7}) {
    bool always = true;
    for (i64 n = 0; n < 210 && always; ++n) {
      i64 prod = 1;
      for (const auto& f : fam.polys()) {
        const i64 v = ((static_cast<i64>(f.a) * n + f.b) % p + p) % p;
        prod = prod * v % p;
      }
      always = prod == 0;
    }
    if (always) return static_cast<u64>(p);
  }
  return std::nullopt;
}

std::vector<SimultaneousHit> brute_scan(const PolynomialFamily& fam, u64 n_limit,
                                        std::size_t min_hits) {
  std::vector<SimultaneousHit> out;
  for (u64 n = 1; n <= n_limit; ++n) {
    SimultaneousHit hit{n, {}};
    for (std::size_t i = 0; i < fam.polys().size(); ++i) {
      const i64 v = static_cast<i64>(fam.polys()[i].a * n) + fam.polys()[i].b;
      if (v > 0 && oracle::is_prime_trial(static_cast<u64>(v))) hit.indices.push_back(i);
    }
    if (hit.indices.size() >= min_hits) out.push_back(hit);
  }
  return out;
}

}  // namespace

TEST_CASE("build_family") {
  const auto f1 = build_family(1, 2);
  CHECK(f1.polys() == std::vector<LinearPolynomial>{{1, 1}, {2, 1}});
  CHECK(f1.d() == 1u);

  const auto f2 = build_family(2, 50);
  REQUIRE(f2.family_size() == 50);
  for (std::size_t k = 0; k < 50; ++k) {
    CHECK(f2.polys()[k].a == 2 * k + 1);
    CHECK(f2.polys()[k].b == 1);
  }
  CHECK(build_family(3, 3).polys() == std::vector<LinearPolynomial>{{1, 1}, {4, 1}, {7, 1}});

  CHECK_THROWS_AS(build_family(0, 50), std::invalid_argument);
  CHECK_THROWS_AS(build_family(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(PolynomialFamily({}), std::invalid_argument);
  CHECK_THROWS_AS(PolynomialFamily({{0, 1}}), std::invalid_argument);
}

TEST_CASE("residue method examples") {
  const auto r = check_admissible_residue(PolynomialFamily({{1, 0}, {1, 1}}));
  CHECK(r.verdict == Verdict::not_admissible);
  CHECK(r.obstruction_prime == 2u);
  CHECK(r.method == AdmissibilityMethod::residue);

  CHECK(check_admissible_residue(PolynomialFamily({{1, 1}})).admissible());
  for (u64 d = 1; d <= 50; ++d) {
    CHECK(check_admissible_residue(build_family(d, 50)).admissible());
  }
}

TEST_CASE("residue method catches obstructions from gcd(a, b)") {
  // 6x + 9 is always divisible by 3; 3 exceeds the family size.
  const auto r = check_admissible_residue(PolynomialFamily({{6, 9}}));
  CHECK(r.verdict == Verdict::not_admissible);
  CHECK(r.obstruction_prime == 3u);
  // Large prime content: 1000003 * (x + 1).
  const auto big = check_admissible_residue(PolynomialFamily({{1000003, 1000003}, {1, 1}}));
  CHECK(big.obstruction_prime == 1000003u);
  CHECK(check_admissible_residue(PolynomialFamily({{2, -1}, {4, 1}})).admissible());
}

TEST_CASE("consecutive shifts are obstructed by a prime <= p") {
  for (const u64 p : primes_up_to(31)) {
    std::vector<LinearPolynomial> polys;
    for (u64 i = 0; i < p; ++i) polys.push_back({1, static_cast<i64>(i)});
    const auto r = check_admissible_residue(PolynomialFamily(polys));
    REQUIRE(r.verdict == Verdict::not_admissible);
    CHECK(*r.obstruction_prime <= p);
  }
}

TEST_CASE("residue method agrees with brute force on small random families") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> size(1, 5);
  std::uniform_int_distribution<u64> coef(1, 10);
  std::uniform_int_distribution<i64> cst(-10, 10);
  int negatives = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<LinearPolynomial> polys;
    const int m = size(rng);
    for (int i = 0; i < m; ++i) polys.push_back({coef(rng), cst(rng)});
    const PolynomialFamily fam(polys);
    const auto report = check_admissible_residue(fam);
    const auto brute = brute_obstruction(fam);
    REQUIRE(report.admissible() == !brute.has_value());
    if (brute) {
      CHECK(report.obstruction_prime == brute);
      ++negatives;
    }
  }
  CHECK(negatives > 100);
}

TEST_CASE("coprimality certificate") {
  const auto r = check_admissible_coprimality(build_family(2, 50));
  CHECK(r.admissible());
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->gcd == 1);
  // P(1) = prod (2k + 2) = 2^50 * 50!.
  mpz_class expected = 1;
  for (unsigned k = 1; k <= 50; ++k) expected *= 2 * k;
  CHECK(r.certificate->p_at_1 == expected);

  const auto single = check_admissible_coprimality(PolynomialFamily({{1, 1}}));
  CHECK(single.certificate->p_at_1 == 2);
  CHECK(single.certificate->p_at_p_at_1 == 3);
  CHECK(single.certificate->gcd == 1);

  CHECK_THROWS_AS(check_admissible_coprimality(PolynomialFamily({{1, 0}, {1, 1}})),
                  std::invalid_argument);
}

TEST_CASE("coprimality certificate for d = 51 is computed exactly") {
  const auto r = check_admissible_coprimality(build_family(51, 50));
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->gcd == 1);
  // P(P(1)) has on the order of 170 digits; no reduction happens.
  CHECK(r.certificate->p_at_p_at_1.get_str().size() > 150);
  mpz_class direct = 1;
  for (unsigned k = 0; k < 50; ++k) direct *= mpz_class(51 * k + 1) * r.certificate->p_at_1 + 1;
  CHECK(direct == r.certificate->p_at_p_at_1);
}

TEST_CASE("coprimality admissible implies residue admissible") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<u64> coef(1, 200);
  std::uniform_int_distribution<int> size(1, 12);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<LinearPolynomial> polys;
    const int m = size(rng);
    for (int i = 0; i < m; ++i) polys.push_back({coef(rng), 1});
    const PolynomialFamily fam(polys);
    if (check_admissible_coprimality(fam).admissible()) {
      REQUIRE(check_admissible_residue(fam).admissible());
    }
  }
}

TEST_CASE("both methods agree on the shifted-unit families") {
  for (u64 d = 1; d <= 50; ++d) {
    const auto r = check_admissible_both(build_family(d, 50));
    CHECK(r.method == AdmissibilityMethod::both);
    CHECK(r.admissible());
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->gcd == 1);
  }
}

TEST_CASE("scan_simultaneous_primes") {
  const PolynomialFamily small({{1, 1}, {2, 1}});
  const auto hits = scan_simultaneous_primes(small, 6, 2);
  REQUIRE(hits.size() == 3);
  CHECK(hits[0] == SimultaneousHit{1, {0, 1}});
  CHECK(hits[1] == SimultaneousHit{2, {0, 1}});
  CHECK(hits[2] == SimultaneousHit{6, {0, 1}});
  CHECK(hits == brute_scan(small, 6, 2));

  const auto fam = build_family(2, 50);
  const auto many = scan_simultaneous_primes(fam, 100, 2);
  CHECK_FALSE(many.empty());
  CHECK(many == brute_scan(fam, 100, 2));
  CHECK(scan_simultaneous_primes(fam, 100, 2, 4) == many);

  CHECK(scan_simultaneous_primes(fam, 100, 51).empty());
  CHECK_THROWS_AS(scan_simultaneous_primes(fam, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(scan_simultaneous_primes(PolynomialFamily({{1, 0}, {1, 1}}), 10, 2),
                  std::invalid_argument);
}

TEST_CASE("scan skips nonpositive values") {
  const PolynomialFamily fam({{1, -3}, {2, -1}});
  CHECK(scan_simultaneous_primes(fam, 30, 2) == brute_scan(fam, 30, 2));
}
