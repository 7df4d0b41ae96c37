#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phishift/arithmetic.hpp"
#include "phishift/kappa.hpp"

namespace phishift {

/// Raised when a constructed witness fails one of its exact checks.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PairStrategy {
  enum class Kind { argmax, fixed, scan_best };

  Kind kind = Kind::argmax;
  u64 k1 = 0;  // used by fixed
  u64 k2 = 0;

  static PairStrategy argmax() { return {Kind::argmax, 0, 0}; }
  static PairStrategy fixed(u64 k1, u64 k2) { return {Kind::fixed, k1, k2}; }
  static PairStrategy scan_best() { return {Kind::scan_best, 0, 0}; }

  friend bool operator==(const PairStrategy&, const PairStrategy&) = default;
};

std::string_view to_string(PairStrategy::Kind kind);
PairStrategy::Kind parse_strategy_kind(std::string_view s);

/// An instance of phi(d) phi(n) = phi(d n) = phi(d (n + l h)) with
/// n = m1 and n + l h = m2.
struct Witness {
  u64 d = 0;
  u64 l = 0;
  std::size_t family_size = kDefaultFamilySize;
  PairStrategy strategy;
  PairCandidate pair;
  u64 r = 0;
  u64 p1 = 0;  // a1p*r + 1
  u64 p2 = 0;  // a2p*r + 1
  u64 m1 = 0;  // a2p * l * s * p1
  u64 m2 = 0;  // a1p * l * s * p2
  u64 h = 0;   // s * (a1p - a2p)
  u64 n = 0;   // min(m1, m2)
  u64 phi_common = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct VerificationReport {
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

struct SearchOptions {
  std::size_t family_size = kDefaultFamilySize;
  /// Exclusive lower end for r; the effective start is max(r_start, a1, l).
  u64 r_start = 0;
  /// Total r candidates examined before stream_witnesses gives up.
  u64 max_candidates = 100'000'000;
  /// Width of the first search window; later windows grow by 4x.
  u64 initial_window = 256;
  /// Width of the common r window used to rank pairs for scan_best.
  u64 scan_window = 1000;
  unsigned jobs = 1;
};

/// All r in (max(r_start, a1, l), r_limit] with a1p*r + 1 and a2p*r + 1
/// both prime, ascending. Classes where a small prime divides either value
/// are skipped before primality testing.
std::vector<u64> find_r(const PairCandidate& pair, u64 l, u64 r_start, u64 r_limit,
                        unsigned jobs = 1);

/// Assembles the witness for (pair, l, r) and verifies it; throws
/// VerificationError when any check fails and std::invalid_argument when
/// r or l is outside the construction's preconditions. Without a strategy
/// the witness records fixed(pair.k1, pair.k2).
Witness build_witness(const PairCandidate& pair, u64 l, u64 r,
                      std::size_t family_size = kDefaultFamilySize,
                      std::optional<PairStrategy> strategy = std::nullopt);

/// Recomputes every field of `w` from (d, l, k1, k2, r, family_size) and
/// every identity by independent factorization.
VerificationReport verify_witness(const Witness& w);

/// Chooses the pair for d according to `strategy`.
PairCandidate select_pair(u64 d, u64 l, PairStrategy strategy,
                          const SearchOptions& options = {});

/// `count` verified witnesses sharing one pair, with strictly increasing r.
/// Throws ResourceError when options.max_candidates is exhausted first.
std::vector<Witness> stream_witnesses(u64 d, u64 l, std::size_t count,
                                      PairStrategy strategy,
                                      const SearchOptions& options = {});

}  // namespace phishift
