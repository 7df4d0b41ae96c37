#include "phishift/admissibility.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "phishift/parallel.hpp"

namespace phishift {

namespace {

u64 residue(i64 b, u64 p) {
  const i64 r = b % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

u64 inverse_mod(u64 a, u64 p) {
  // p prime, a != 0 mod p.
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(p), new_r = static_cast<i64>(a % p);
  while (new_r != 0) {
    const i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return t < 0 ? static_cast<u64>(t + static_cast<i64>(p)) : static_cast<u64>(t);
}

bool covers_all_classes(const PolynomialFamily& fam, u64 p) {
  // Each polynomial with a root removes one class, so past the family size
  // only a polynomial vanishing identically mod p can cover everything.
  if (p > fam.family_size()) {
    for (const auto& [a, b] : fam.polys()) {
      if (a % p == 0 && residue(b, p) == 0) return true;
    }
    return false;
  }
  std::vector<bool> covered(p, false);
  std::size_t count = 0;
  for (const auto& [a, b] : fam.polys()) {
    const u64 am = a % p;
    const u64 bm = residue(b, p);
    if (am == 0) {
      if (bm == 0) return true;
      continue;
    }
    const u64 root = (p - bm) % p * inverse_mod(am, p) % p;
    if (!covered[root]) {
      covered[root] = true;
      ++count;
    }
  }
  return count == p;
}

// f(n) as an exact value; nullopt when it is not a positive 64-bit number.
std::optional<u64> evaluate(const LinearPolynomial& f, u64 n) {
  const u128 an = static_cast<u128>(f.a) * n;
  if (f.b >= 0) {
    const u128 v = an + static_cast<u64>(f.b);
    if (v > std::numeric_limits<u64>::max()) return std::nullopt;
    return static_cast<u64>(v);
  }
  const u128 neg = static_cast<u128>(-static_cast<__int128>(f.b));
  if (an <= neg) return std::nullopt;
  const u128 v = an - neg;
  if (v > std::numeric_limits<u64>::max()) return std::nullopt;
  return static_cast<u64>(v);
}

}  // namespace

PolynomialFamily::PolynomialFamily(std::vector<LinearPolynomial> polys)
    : polys_(std::move(polys)) {
  if (polys_.empty()) {
    throw std::invalid_argument("polynomial family must be nonempty");
  }
  for (const auto& f : polys_) {
    if (f.a == 0) {
      throw std::invalid_argument("leading coefficient must be at least 1");
    }
  }
}

PolynomialFamily PolynomialFamily::shifted_units(u64 d, std::size_t family_size) {
  if (d == 0) throw std::invalid_argument("d must be at least 1");
  if (family_size < 2) {
    throw std::invalid_argument("family size must be at least 2");
  }
  std::vector<LinearPolynomial> polys;
  polys.reserve(family_size);
  for (u64 k = 0; k < family_size; ++k) {
    polys.push_back({checked_add(checked_mul(k, d), 1), 1});
  }
  PolynomialFamily fam(std::move(polys));
  fam.d_ = d;
  return fam;
}

std::string_view to_string(AdmissibilityMethod m) {
  switch (m) {
    case AdmissibilityMethod::residue: return "residue";
    case AdmissibilityMethod::coprimality: return "coprimality";
    case AdmissibilityMethod::both: return "both";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::admissible: return "admissible";
    case Verdict::not_admissible: return "not_admissible";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

AdmissibilityMethod parse_method(std::string_view s) {
  if (s == "residue") return AdmissibilityMethod::residue;
  if (s == "coprimality") return AdmissibilityMethod::coprimality;
  if (s == "both") return AdmissibilityMethod::both;
  throw std::invalid_argument("unknown admissibility method: " + std::string(s));
}

AdmissibilityReport check_admissible_residue(const PolynomialFamily& fam) {
  std::set<u64> candidates;
  for (const u64 p : primes_up_to(fam.family_size())) candidates.insert(p);
  for (const auto& [a, b] : fam.polys()) {
    const u64 babs = b < 0 ? static_cast<u64>(-(b + 1)) + 1 : static_cast<u64>(b);
    const u64 g = gcd(a, babs);
    if (g > 1) {
      const Factorization fg = factorize(g);
      for (const auto& pp : fg.factors()) candidates.insert(pp.prime);
    }
  }

  AdmissibilityReport report;
  report.method = AdmissibilityMethod::residue;
  report.verdict = Verdict::admissible;
  for (const u64 p : candidates) {
    if (covers_all_classes(fam, p)) {
      report.verdict = Verdict::not_admissible;
      report.obstruction_prime = p;
      break;
    }
  }
  return report;
}

AdmissibilityReport check_admissible_coprimality(const PolynomialFamily& fam) {
  for (const auto& f : fam.polys()) {
    if (f.b != 1) {
      throw std::invalid_argument(
          "coprimality certificate requires every constant term to be 1");
    }
  }
  CoprimalityCertificate cert;
  cert.p_at_1 = 1;
  for (const auto& f : fam.polys()) {
    cert.p_at_1 *= mpz_class(static_cast<unsigned long>(f.a)) + 1;
  }
  cert.p_at_p_at_1 = 1;
  for (const auto& f : fam.polys()) {
    cert.p_at_p_at_1 *= mpz_class(static_cast<unsigned long>(f.a)) * cert.p_at_1 + 1;
  }
  mpz_gcd(cert.gcd.get_mpz_t(), cert.p_at_1.get_mpz_t(),
          cert.p_at_p_at_1.get_mpz_t());

  AdmissibilityReport report;
  report.method = AdmissibilityMethod::coprimality;
  report.verdict = cert.gcd == 1 ? Verdict::admissible : Verdict::inconclusive;
  report.certificate = std::move(cert);
  return report;
}

AdmissibilityReport check_admissible_both(const PolynomialFamily& fam) {
  auto report = check_admissible_residue(fam);
  const auto coprime = check_admissible_coprimality(fam);
  if (coprime.admissible() && !report.admissible()) {
    throw std::logic_error("coprimality certificate contradicts residue test");
  }
  report.method = AdmissibilityMethod::both;
  report.certificate = coprime.certificate;
  return report;
}

std::vector<SimultaneousHit> scan_simultaneous_primes(
    const PolynomialFamily& fam, u64 n_limit, std::size_t min_hits,
    unsigned jobs) {
  if (min_hits < 2) throw std::invalid_argument("min_hits must be at least 2");
  if (!check_admissible_residue(fam).admissible()) {
    throw std::invalid_argument("family is not admissible");
  }
  if (min_hits > fam.family_size() || n_limit == 0) return {};

  // Slices are keyed by their first index so the merge is ascending in n.
  std::map<std::size_t, std::vector<SimultaneousHit>> slices;
  std::mutex slices_mutex;
  parallel_slices(n_limit, jobs, [&](std::size_t begin, std::size_t end) {
    std::vector<SimultaneousHit> local;
    for (std::size_t i = begin; i < end; ++i) {
      const u64 n = i + 1;
      SimultaneousHit hit{n, {}};
      for (std::size_t j = 0; j < fam.polys().size(); ++j) {
        const auto v = evaluate(fam.polys()[j], n);
        if (v && is_prime(*v)) hit.indices.push_back(j);
      }
      if (hit.indices.size() >= min_hits) local.push_back(std::move(hit));
    }
    std::lock_guard lock(slices_mutex);
    slices.emplace(begin, std::move(local));
  });

  std::vector<SimultaneousHit> hits;
  for (auto& [begin, local] : slices) {
    for (auto& h : local) hits.push_back(std::move(h));
  }
  return hits;
}

}  // namespace phishift
