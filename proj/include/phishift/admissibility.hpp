#pragma once

#include <gmpxx.h>

#include <optional>
#include <string_view>
#include <vector>

#include "phishift/arithmetic.hpp"

namespace phishift {

/// a*x + b with a >= 1.
struct LinearPolynomial {
  u64 a = 1;
  i64 b = 0;

  friend bool operator==(const LinearPolynomial&, const LinearPolynomial&) = default;
};

class PolynomialFamily {
 public:
  /// Arbitrary nonempty family of linear polynomials.
  explicit PolynomialFamily(std::vector<LinearPolynomial> polys);

  /// {(k*d + 1) x + 1 : 0 <= k < family_size}; requires d >= 1 and
  /// family_size >= 2.
  static PolynomialFamily shifted_units(u64 d, std::size_t family_size);

  const std::vector<LinearPolynomial>& polys() const { return polys_; }
  std::optional<u64> d() const { return d_; }
  std::size_t family_size() const { return polys_.size(); }

 private:
  std::vector<LinearPolynomial> polys_;
  std::optional<u64> d_;
};

inline PolynomialFamily build_family(u64 d, std::size_t family_size) {
  return PolynomialFamily::shifted_units(d, family_size);
}

enum class AdmissibilityMethod { residue, coprimality, both };
enum class Verdict { admissible, not_admissible, inconclusive };

std::string_view to_string(AdmissibilityMethod m);
std::string_view to_string(Verdict v);
AdmissibilityMethod parse_method(std::string_view s);

/// P(1) = prod(a_i + 1) and P(P(1)) = prod(a_i * P(1) + 1), kept exact.
struct CoprimalityCertificate {
  mpz_class p_at_1;
  mpz_class p_at_p_at_1;
  mpz_class gcd;
};

struct AdmissibilityReport {
  Verdict verdict = Verdict::inconclusive;
  AdmissibilityMethod method = AdmissibilityMethod::residue;
  std::optional<u64> obstruction_prime;
  std::optional<CoprimalityCertificate> certificate;

  bool admissible() const { return verdict == Verdict::admissible; }
};

/// Decides admissibility exactly. Only primes p <= family size, or primes
/// dividing some gcd(a_i, b_i), can have every residue class covered.
/// Reports the smallest obstruction prime when there is one.
AdmissibilityReport check_admissible_residue(const PolynomialFamily& fam);

/// Sufficient test for families with every b_i == 1: gcd(P(1), P(P(1))) == 1
/// proves admissibility, anything else is inconclusive. Throws
/// std::invalid_argument when some b_i != 1.
AdmissibilityReport check_admissible_coprimality(const PolynomialFamily& fam);

/// Runs both tests; the verdict is the residue verdict and the certificate
/// is attached. Throws std::logic_error if the coprimality test reports
/// admissible while the residue test finds an obstruction.
AdmissibilityReport check_admissible_both(const PolynomialFamily& fam);

struct SimultaneousHit {
  u64 n = 0;
  std::vector<std::size_t> indices;  // i with f_i(n) prime, ascending

  friend bool operator==(const SimultaneousHit&, const SimultaneousHit&) = default;
};

/// Every 1 <= n <= n_limit at which at least `min_hits` members are prime.
/// The family must pass the residue test and min_hits must be >= 2.
/// `jobs` splits the range across threads; output order is ascending n.
std::vector<SimultaneousHit> scan_simultaneous_primes(
    const PolynomialFamily& fam, u64 n_limit, std::size_t min_hits,
    unsigned jobs = 1);

}  // namespace phishift
