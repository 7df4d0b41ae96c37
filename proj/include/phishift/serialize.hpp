#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "phishift/admissibility.hpp"
#include "phishift/kappa.hpp"
#include "phishift/witness.hpp"

namespace phishift {

using Json = nlohmann::ordered_json;

/// Column order shared by the JSON rows and the CSV header.
inline constexpr const char* kKappaColumns[] = {
    "d", "kappa", "k1", "k2", "a1", "a2", "g", "s", "pair_h", "trivial_bound"};

Json to_json(const PairCandidate& pair);
Json to_json(const KappaRow& row);
Json to_json(const Witness& w);
Json to_json(const AdmissibilityReport& report);
Json to_json(const SimultaneousHit& hit, const PolynomialFamily& fam);

/// Throws std::invalid_argument on missing or mistyped fields.
Witness witness_from_json(const Json& j);

/// Accepts a single witness object, an array of them, or an output
/// envelope whose "rows" hold witnesses.
std::vector<Witness> witnesses_from_document(const Json& doc);

/// RFC 4180 CSV with a header line, CRLF line endings.
void write_kappa_csv(std::ostream& os, std::span<const KappaRow> rows);

/// Human-readable aligned table; `grouped` inserts ' every three digits.
void write_kappa_table(std::ostream& os, std::span<const KappaRow> rows, bool grouped);

std::string group_digits(u64 v, char sep = '\'');

}  // namespace phishift
