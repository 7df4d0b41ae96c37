#include "phishift/serialize.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace phishift {

namespace {

u64 get_u64(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  const Json& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be a non-negative integer");
  }
  return v.get<u64>();
}

std::string value_string(const LinearPolynomial& f, u64 n) {
  const __int128 v = static_cast<__int128>(f.a) * n + f.b;
  if (v < 0) return "-" + to_string(static_cast<u128>(-v));
  return to_string(static_cast<u128>(v));
}

}  // namespace

Json to_json(const PairCandidate& p) {
  Json j;
  j["d"] = p.d;
  j["k1"] = p.k1;
  j["k2"] = p.k2;
  j["a1"] = p.a1;
  j["a2"] = p.a2;
  j["g"] = p.g;
  j["a1p"] = p.a1p;
  j["a2p"] = p.a2p;
  j["s"] = p.s;
  j["pair_value"] = p.pair_value;
  j["pair_h"] = p.pair_h;
  return j;
}

Json to_json(const KappaRow& row) {
  Json j;
  j["d"] = row.d;
  j["kappa"] = row.kappa;
  j["k1"] = row.argmax.k1;
  j["k2"] = row.argmax.k2;
  j["a1"] = row.argmax.a1;
  j["a2"] = row.argmax.a2;
  j["g"] = row.argmax.g;
  j["s"] = row.argmax.s;
  j["pair_h"] = row.argmax.pair_h;
  j["trivial_bound"] = row.trivial_bound;
  return j;
}

Json to_json(const Witness& w) {
  Json j;
  j["d"] = w.d;
  j["l"] = w.l;
  j["family_size"] = w.family_size;
  j["pair_strategy"] = std::string(to_string(w.strategy.kind));
  j["pair"] = to_json(w.pair);
  j["r"] = w.r;
  j["p1"] = w.p1;
  j["p2"] = w.p2;
  j["m1"] = w.m1;
  j["m2"] = w.m2;
  j["h"] = w.h;
  j["n"] = w.n;
  j["phi_common"] = w.phi_common;
  return j;
}

Json to_json(const AdmissibilityReport& report) {
  Json j;
  j["method"] = std::string(to_string(report.method));
  j["verdict"] = std::string(to_string(report.verdict));
  j["obstruction_prime"] =
      report.obstruction_prime ? Json(*report.obstruction_prime) : Json(nullptr);
  if (report.certificate) {
    Json c;
    c["p_at_1"] = report.certificate->p_at_1.get_str();
    c["p_at_p_at_1"] = report.certificate->p_at_p_at_1.get_str();
    c["gcd"] = report.certificate->gcd.get_str();
    j["certificate"] = std::move(c);
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

Json to_json(const SimultaneousHit& hit, const PolynomialFamily& fam) {
  Json j;
  j["n"] = hit.n;
  j["indices"] = hit.indices;
  Json values = Json::array();
  for (const std::size_t i : hit.indices) {
    values.push_back(value_string(fam.polys().at(i), hit.n));
  }
  j["values"] = std::move(values);
  return j;
}

Witness witness_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("witness must be a JSON object");
  Witness w;
  w.d = get_u64(j, "d");
  w.l = get_u64(j, "l");
  w.family_size = get_u64(j, "family_size");
  if (!j.contains("pair_strategy") || !j.at("pair_strategy").is_string()) {
    throw std::invalid_argument("field \"pair_strategy\" must be a string");
  }
  if (!j.contains("pair")) throw std::invalid_argument("missing field \"pair\"");
  const Json& p = j.at("pair");
  w.pair.d = get_u64(p, "d");
  w.pair.k1 = get_u64(p, "k1");
  w.pair.k2 = get_u64(p, "k2");
  w.pair.a1 = get_u64(p, "a1");
  w.pair.a2 = get_u64(p, "a2");
  w.pair.g = get_u64(p, "g");
  w.pair.a1p = get_u64(p, "a1p");
  w.pair.a2p = get_u64(p, "a2p");
  w.pair.s = get_u64(p, "s");
  w.pair.pair_value = get_u64(p, "pair_value");
  w.pair.pair_h = get_u64(p, "pair_h");
  w.strategy.kind = parse_strategy_kind(j.at("pair_strategy").get<std::string>());
  if (w.strategy.kind == PairStrategy::Kind::fixed) {
    w.strategy.k1 = w.pair.k1;
    w.strategy.k2 = w.pair.k2;
  }
  w.r = get_u64(j, "r");
  w.p1 = get_u64(j, "p1");
  w.p2 = get_u64(j, "p2");
  w.m1 = get_u64(j, "m1");
  w.m2 = get_u64(j, "m2");
  w.h = get_u64(j, "h");
  w.n = get_u64(j, "n");
  w.phi_common = get_u64(j, "phi_common");
  return w;
}

std::vector<Witness> witnesses_from_document(const Json& doc) {
  const Json* items = &doc;
  if (doc.is_object() && doc.contains("rows")) items = &doc.at("rows");
  std::vector<Witness> out;
  if (items->is_array()) {
    for (const auto& item : *items) out.push_back(witness_from_json(item));
  } else {
    out.push_back(witness_from_json(*items));
  }
  if (out.empty()) throw std::invalid_argument("document holds no witnesses");
  return out;
}

void write_kappa_csv(std::ostream& os, std::span<const KappaRow> rows) {
  bool first = true;
  for (const char* col : kKappaColumns) {
    os << (first ? "" : ",") << col;
    first = false;
  }
  os << "\r\n";
  for (const auto& row : rows) {
    const auto& a = row.argmax;
    os << row.d << ',' << row.kappa << ',' << a.k1 << ',' << a.k2 << ',' << a.a1 << ','
       << a.a2 << ',' << a.g << ',' << a.s << ',' << a.pair_h << ',' << row.trivial_bound
       << "\r\n";
  }
}

std::string group_digits(u64 v, char sep) {
  std::string digits = std::to_string(v);
  std::string out;
  const std::size_t lead = digits.size() % 3;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (i + 3 - lead) % 3 == 0) out.push_back(sep);
    out.push_back(digits[i]);
  }
  return out;
}

void write_kappa_table(std::ostream& os, std::span<const KappaRow> rows, bool grouped) {
  auto fmt = [grouped](u64 v) { return grouped ? group_digits(v) : std::to_string(v); };
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"d", "kappa", "k1", "k2", "a1", "a2", "g", "pair_h", "bound"});
  for (const auto& row : rows) {
    const auto& a = row.argmax;
    cells.push_back({std::to_string(row.d), fmt(row.kappa), std::to_string(a.k1),
                     std::to_string(a.k2), std::to_string(a.a1), std::to_string(a.a2),
                     std::to_string(a.g), fmt(a.pair_h), fmt(row.trivial_bound)});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) os << "  ";
      os << std::string(width[c] - line[c].size(), ' ') << line[c];
    }
    os << '\n';
  }
}

}  // namespace phishift
