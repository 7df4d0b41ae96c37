#include "phishift/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "phishift/admissibility.hpp"
#include "phishift/kappa.hpp"
#include "phishift/serialize.hpp"
#include "phishift/witness.hpp"

namespace phishift::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Common {
  std::string format = "json";
  std::string out_file;
  bool no_timing = false;
  bool grouped = false;
  std::optional<unsigned> jobs;
};

struct Options {
  u64 d = 0;
  u64 l = 0;
  u64 from = 0;
  u64 to = 0;
  std::size_t family_size = kDefaultFamilySize;
  std::string method = "both";
  std::string coeffs;
  std::optional<u64> k1;
  std::optional<u64> k2;
  std::string strategy = "argmax";
  std::size_t count = 1;
  u64 r_start = 0;
  u64 max_candidates = SearchOptions{}.max_candidates;
  std::string file;
  u64 n_limit = 0;
  std::size_t min_hits = 2;
};

class Command {
 public:
  Command(std::string name, const Common& common, std::ostream& out)
      : name_(std::move(name)), common_(common), out_(out), start_(Clock::now()) {}

  Json& parameters() { return parameters_; }

  /// Writes text to --out when given, otherwise to the command's stream.
  void emit(const std::string& text) const {
    if (common_.out_file.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(common_.out_file, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file " + common_.out_file);
    file << text;
  }

  void emit_envelope(Json rows) const {
    Json env;
    env["command"] = name_;
    env["version"] = kVersion;
    env["parameters"] = parameters_.is_null() ? Json::object() : parameters_;
    env["rows"] = std::move(rows);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
    env["elapsed_ms"] = common_.no_timing ? 0 : static_cast<u64>(ms.count());
    emit(env.dump(2) + "\n");
  }

 private:
  std::string name_;
  const Common& common_;
  std::ostream& out_;
  Clock::time_point start_;
  Json parameters_;
};

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (c.format == f) return;
  }
  throw std::invalid_argument("unsupported --format " + c.format + " for this command");
}

std::vector<LinearPolynomial> parse_coeffs(const std::string& spec) {
  std::vector<LinearPolynomial> polys;
  std::stringstream terms(spec);
  std::string term;
  while (std::getline(terms, term, ':')) {
    const auto comma = term.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("coefficient term \"" + term + "\" must be a,b");
    }
    std::size_t used_a = 0, used_b = 0;
    const std::string a_text = term.substr(0, comma);
    const std::string b_text = term.substr(comma + 1);
    LinearPolynomial f;
    try {
      if (a_text.empty() || a_text.front() == '-') throw std::invalid_argument("a");
      f.a = std::stoull(a_text, &used_a);
      f.b = std::stoll(b_text, &used_b);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse coefficient term \"" + term + "\"");
    }
    if (used_a != a_text.size() || used_b != b_text.size()) {
      throw std::invalid_argument("cannot parse coefficient term \"" + term + "\"");
    }
    polys.push_back(f);
  }
  return polys;
}

PolynomialFamily family_from(const Options& o, Json& params) {
  if (!o.coeffs.empty()) {
    params["coeffs"] = o.coeffs;
    return PolynomialFamily(parse_coeffs(o.coeffs));
  }
  if (o.d == 0) throw std::invalid_argument("--d must be at least 1 (or pass --coeffs)");
  params["d"] = o.d;
  params["family_size"] = o.family_size;
  return build_family(o.d, o.family_size);
}

int cmd_kappa(const Options& o, const Common& c, std::ostream& out) {
  require_format(c, {"json", "csv", "table"});
  Command cmd("kappa", c, out);
  cmd.parameters()["d"] = o.d;
  cmd.parameters()["family_size"] = o.family_size;
  const KappaRow row = kappa(o.d, o.family_size);
  std::ostringstream os;
  if (c.format == "json") {
    cmd.emit_envelope(Json::array({to_json(row)}));
    return kExitOk;
  }
  if (c.format == "csv") {
    write_kappa_csv(os, std::span(&row, 1));
  } else {
    write_kappa_table(os, std::span(&row, 1), c.grouped);
  }
  cmd.emit(os.str());
  return kExitOk;
}

int cmd_table(const Options& o, const Common& c, const Environment& env,
              std::ostream& out) {
  require_format(c, {"json", "csv", "table"});
  Command cmd("table", c, out);
  cmd.parameters()["from"] = o.from;
  cmd.parameters()["to"] = o.to;
  cmd.parameters()["family_size"] = o.family_size;
  const auto rows = kappa_table(o.from, o.to, o.family_size, c.jobs.value_or(env.jobs));
  if (c.format == "json") {
    Json j = Json::array();
    for (const auto& row : rows) j.push_back(to_json(row));
    cmd.emit_envelope(std::move(j));
    return kExitOk;
  }
  std::ostringstream os;
  if (c.format == "csv") {
    write_kappa_csv(os, rows);
  } else {
    write_kappa_table(os, rows, c.grouped);
  }
  cmd.emit(os.str());
  return kExitOk;
}

int cmd_admissible(const Options& o, const Common& c, std::ostream& out) {
  require_format(c, {"json"});
  Command cmd("admissible", c, out);
  const PolynomialFamily fam = family_from(o, cmd.parameters());
  const AdmissibilityMethod method = parse_method(o.method);
  cmd.parameters()["method"] = o.method;

  Json rows = Json::array();
  int code = kExitOk;
  if (method == AdmissibilityMethod::both) {
    // The coprimality precondition is checked before any output.
    const auto coprime = check_admissible_coprimality(fam);
    const auto residue = check_admissible_residue(fam);
    rows.push_back(to_json(residue));
    rows.push_back(to_json(coprime));
    if (coprime.admissible() && !residue.admissible()) {
      throw std::logic_error("coprimality certificate contradicts residue test");
    }
    code = residue.admissible() ? kExitOk : kExitNegative;
  } else if (method == AdmissibilityMethod::residue) {
    const auto residue = check_admissible_residue(fam);
    rows.push_back(to_json(residue));
    code = residue.admissible() ? kExitOk : kExitNegative;
  } else {
    const auto coprime = check_admissible_coprimality(fam);
    rows.push_back(to_json(coprime));
    code = coprime.admissible() ? kExitOk : kExitInconclusive;
  }
  cmd.emit_envelope(std::move(rows));
  return code;
}

int cmd_witness(const Options& o, const Common& c, const Environment& env,
                std::ostream& out) {
  require_format(c, {"json"});
  Command cmd("witness", c, out);
  PairStrategy strategy;
  if (o.k1 || o.k2) {
    if (!o.k1 || !o.k2) throw std::invalid_argument("--k1 and --k2 go together");
    strategy = PairStrategy::fixed(*o.k1, *o.k2);
  } else {
    strategy.kind = parse_strategy_kind(o.strategy);
    if (strategy.kind == PairStrategy::Kind::fixed) {
      throw std::invalid_argument("the fixed strategy needs --k1 and --k2");
    }
  }
  auto& p = cmd.parameters();
  p["d"] = o.d;
  p["l"] = o.l;
  p["family_size"] = o.family_size;
  p["pair_strategy"] = std::string(to_string(strategy.kind));
  if (strategy.kind == PairStrategy::Kind::fixed) {
    p["k1"] = strategy.k1;
    p["k2"] = strategy.k2;
  }
  p["count"] = o.count;
  p["r_start"] = o.r_start;

  SearchOptions search;
  search.family_size = o.family_size;
  search.r_start = o.r_start;
  search.max_candidates = o.max_candidates;
  search.jobs = c.jobs.value_or(env.jobs);
  const auto witnesses = stream_witnesses(o.d, o.l, o.count, strategy, search);

  Json rows = Json::array();
  for (const auto& w : witnesses) rows.push_back(to_json(w));
  cmd.emit_envelope(std::move(rows));
  return kExitOk;
}

int cmd_verify(const Options& o, const Common& c, std::ostream& out) {
  require_format(c, {"json"});
  Command cmd("verify", c, out);
  cmd.parameters()["file"] = o.file;
  std::ifstream in(o.file, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + o.file);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  const auto witnesses = witnesses_from_document(doc);

  Json rows = Json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const auto report = verify_witness(witnesses[i]);
    all_ok = all_ok && report.ok();
    Json row;
    row["index"] = i;
    row["verified"] = report.ok();
    row["failures"] = report.failures;
    rows.push_back(std::move(row));
  }
  cmd.emit_envelope(std::move(rows));
  return all_ok ? kExitOk : kExitNegative;
}

int cmd_scan(const Options& o, const Common& c, const Environment& env,
             std::ostream& out) {
  require_format(c, {"json"});
  Command cmd("scan", c, out);
  const PolynomialFamily fam = family_from(o, cmd.parameters());
  cmd.parameters()["n_limit"] = o.n_limit;
  cmd.parameters()["min_hits"] = o.min_hits;
  const auto hits =
      scan_simultaneous_primes(fam, o.n_limit, o.min_hits, c.jobs.value_or(env.jobs));
  Json rows = Json::array();
  for (const auto& hit : hits) rows.push_back(to_json(hit, fam));
  cmd.emit_envelope(std::move(rows));
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool formats, bool jobs, bool out_file) {
  if (formats) {
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_flag("--grouped", c.grouped, "Group digits with ' in table output");
  }
  if (jobs) sub->add_option("--jobs", c.jobs, "Worker threads (overrides PHISHIFT_JOBS)");
  if (out_file) sub->add_option("--out", c.out_file, "Write output to FILE");
  sub->add_flag("--no-timing", c.no_timing, "Report elapsed_ms as 0");
}

}  // namespace

Environment environment_from_process() {
  Environment env;
  env.jobs = std::max(1u, std::thread::hardware_concurrency());
  if (const char* value = std::getenv("PHISHIFT_JOBS")) {
    try {
      const unsigned long parsed = std::stoul(value);
      if (parsed > 0) env.jobs = static_cast<unsigned>(parsed);
    } catch (const std::exception&) {
      // Ignored; hardware default stays.
    }
  }
  return env;
}

int run(const std::vector<std::string>& args, const Environment& env, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Totient shift bounds, admissibility certificates and witnesses", "phishift"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options o;
  Common c;

  auto* kappa_cmd = app.add_subcommand("kappa", "Evaluate kappa_d and its maximizing pair");
  kappa_cmd->add_option("--d", o.d, "Modulus d")->required();
  kappa_cmd->add_option("--family-size", o.family_size, "Number of family members");
  add_common(kappa_cmd, c, true, false, false);

  auto* table_cmd = app.add_subcommand("table", "Tabulate kappa_d over a range of d");
  table_cmd->add_option("--from", o.from, "First d")->required();
  table_cmd->add_option("--to", o.to, "Last d")->required();
  table_cmd->add_option("--family-size", o.family_size, "Number of family members");
  add_common(table_cmd, c, true, true, true);

  auto* adm_cmd = app.add_subcommand("admissible", "Certify admissibility of a linear family");
  adm_cmd->add_option("--d", o.d, "Build the family {(kd+1)x+1}");
  adm_cmd->add_option("--family-size", o.family_size, "Number of family members");
  adm_cmd->add_option("--coeffs", o.coeffs, "Custom family as a,b:a,b:...");
  adm_cmd->add_option("--method", o.method, "residue, coprimality or both")
      ->check(CLI::IsMember({"residue", "coprimality", "both"}));
  add_common(adm_cmd, c, false, false, false);

  auto* wit_cmd = app.add_subcommand("witness", "Construct and verify totient witnesses");
  wit_cmd->add_option("--d", o.d, "Modulus d")->required();
  wit_cmd->add_option("--l", o.l, "Multiplier l, coprime to d")->required();
  wit_cmd->add_option("--k1", o.k1, "Fixed pair index k1");
  wit_cmd->add_option("--k2", o.k2, "Fixed pair index k2");
  wit_cmd->add_option("--strategy", o.strategy, "argmax or scan-best")
      ->check(CLI::IsMember({"argmax", "scan-best", "scan_best"}));
  wit_cmd->add_option("--count", o.count, "Number of witnesses");
  wit_cmd->add_option("--r-start", o.r_start, "Search r above this value");
  wit_cmd->add_option("--family-size", o.family_size, "Number of family members");
  wit_cmd->add_option("--max-candidates", o.max_candidates, "Search budget in r values");
  add_common(wit_cmd, c, false, true, true);

  auto* ver_cmd = app.add_subcommand("verify", "Re-verify stored witnesses");
  ver_cmd->add_option("--file", o.file, "Witness JSON")->required();
  add_common(ver_cmd, c, false, false, false);

  auto* scan_cmd = app.add_subcommand("scan", "List n with simultaneous prime members");
  scan_cmd->add_option("--d", o.d, "Build the family {(kd+1)x+1}");
  scan_cmd->add_option("--family-size", o.family_size, "Number of family members");
  scan_cmd->add_option("--coeffs", o.coeffs, "Custom family as a,b:a,b:...");
  scan_cmd->add_option("--n-limit", o.n_limit, "Largest n")->required();
  scan_cmd->add_option("--min-hits", o.min_hits, "Minimum simultaneous primes");
  add_common(scan_cmd, c, false, true, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (kappa_cmd->parsed()) return cmd_kappa(o, c, out);
    if (table_cmd->parsed()) return cmd_table(o, c, env, out);
    if (adm_cmd->parsed()) return cmd_admissible(o, c, out);
    if (wit_cmd->parsed()) return cmd_witness(o, c, env, out);
    if (ver_cmd->parsed()) return cmd_verify(o, c, out);
    if (scan_cmd->parsed()) return cmd_scan(o, c, env, out);
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitNegative;
  } catch (const ResourceError& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::overflow_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace phishift::cli
