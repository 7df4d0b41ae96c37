#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "phishift/admissibility.hpp"
#include "phishift/arithmetic.hpp"
#include "phishift/cli.hpp"
#include "phishift/kappa.hpp"
#include "phishift/serialize.hpp"
#include "phishift/witness.hpp"

namespace py = pybind11;
using namespace phishift;

namespace {

// Hex keeps clear of the interpreter cap on decimal string conversion.
py::int_ to_pyint(const mpz_class& v) {
  return py::int_(py::reinterpret_steal<py::object>(
      PyLong_FromString(v.get_str(16).c_str(), nullptr, 16)));
}

std::vector<std::pair<u64, unsigned>> factor_pairs(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  const Factorization f = factorize(n);
  for (const auto& [p, e] : f.factors()) out.emplace_back(p, e);
  return out;
}

PolynomialFamily family_from_pairs(const std::vector<std::pair<u64, i64>>& coeffs) {
  std::vector<LinearPolynomial> polys;
  polys.reserve(coeffs.size());
  for (const auto& [a, b] : coeffs) polys.push_back({a, b});
  return PolynomialFamily(std::move(polys));
}

PairStrategy strategy_from(const std::string& name, std::optional<u64> k1,
                           std::optional<u64> k2) {
  if (k1 || k2) {
    if (!k1 || !k2) throw std::invalid_argument("k1 and k2 go together");
    return PairStrategy::fixed(*k1, *k2);
  }
  const auto kind = parse_strategy_kind(name);
  if (kind == PairStrategy::Kind::fixed) {
    throw std::invalid_argument("the fixed strategy needs k1 and k2");
  }
  return {kind, 0, 0};
}

py::dict report_dict(const AdmissibilityReport& r) {
  py::dict out;
  out["method"] = std::string(to_string(r.method));
  out["verdict"] = std::string(to_string(r.verdict));
  out["admissible"] = r.admissible();
  out["obstruction_prime"] = r.obstruction_prime ? py::object(py::int_(*r.obstruction_prime))
                                                 : py::object(py::none());
  if (r.certificate) {
    out["certificate"] = py::make_tuple(to_pyint(r.certificate->p_at_1),
                                        to_pyint(r.certificate->p_at_p_at_1),
                                        to_pyint(r.certificate->gcd));
  } else {
    out["certificate"] = py::none();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(phishift, m) {
  m.doc() = "Totient shift bounds, admissibility certificates and verified witnesses";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);

  m.def("gcd", &phishift::gcd, py::arg("a"), py::arg("b"));
  m.def("is_prime", &is_prime, py::arg("n"));
  m.def("factorize", &factor_pairs, py::arg("n"),
        "Prime factorization as a list of (prime, exponent), primes ascending.");
  m.def("radical", py::overload_cast<u64>(&phishift::radical), py::arg("n"));
  m.def("euler_phi", py::overload_cast<u64>(&phishift::euler_phi), py::arg("n"));

  py::class_<PolynomialFamily>(m, "PolynomialFamily")
      .def(py::init(&family_from_pairs), py::arg("coeffs"))
      .def_property_readonly("coeffs",
                             [](const PolynomialFamily& f) {
                               std::vector<std::pair<u64, i64>> out;
                               for (const auto& p : f.polys()) out.emplace_back(p.a, p.b);
                               return out;
                             })
      .def_property_readonly("d", &PolynomialFamily::d)
      .def("__len__", &PolynomialFamily::family_size);

  m.def("build_family", &build_family, py::arg("d"), py::arg("family_size") = kDefaultFamilySize);
  m.def(
      "check_admissible",
      [](const PolynomialFamily& fam, const std::string& method) {
        switch (parse_method(method)) {
          case AdmissibilityMethod::residue: return report_dict(check_admissible_residue(fam));
          case AdmissibilityMethod::coprimality:
            return report_dict(check_admissible_coprimality(fam));
          case AdmissibilityMethod::both: return report_dict(check_admissible_both(fam));
        }
        throw std::invalid_argument("unknown method");
      },
      py::arg("family"), py::arg("method") = "residue");
  m.def(
      "scan_simultaneous_primes",
      [](const PolynomialFamily& fam, u64 n_limit, std::size_t min_hits, unsigned jobs) {
        std::vector<std::pair<u64, std::vector<std::size_t>>> out;
        for (auto& hit : scan_simultaneous_primes(fam, n_limit, min_hits, jobs)) {
          out.emplace_back(hit.n, std::move(hit.indices));
        }
        return out;
      },
      py::arg("family"), py::arg("n_limit"), py::arg("min_hits") = 2, py::arg("jobs") = 1);

  py::class_<PairCandidate>(m, "PairCandidate")
      .def_readonly("d", &PairCandidate::d)
      .def_readonly("k1", &PairCandidate::k1)
      .def_readonly("k2", &PairCandidate::k2)
      .def_readonly("a1", &PairCandidate::a1)
      .def_readonly("a2", &PairCandidate::a2)
      .def_readonly("g", &PairCandidate::g)
      .def_readonly("a1p", &PairCandidate::a1p)
      .def_readonly("a2p", &PairCandidate::a2p)
      .def_readonly("s", &PairCandidate::s)
      .def_readonly("pair_value", &PairCandidate::pair_value)
      .def_readonly("pair_h", &PairCandidate::pair_h)
      .def("__eq__", [](const PairCandidate& a, const PairCandidate& b) { return a == b; })
      .def("__repr__", [](const PairCandidate& p) {
        std::ostringstream os;
        os << "PairCandidate(d=" << p.d << ", k1=" << p.k1 << ", k2=" << p.k2
           << ", pair_value=" << p.pair_value << ", pair_h=" << p.pair_h << ")";
        return os.str();
      });

  py::class_<KappaRow>(m, "KappaRow")
      .def_readonly("d", &KappaRow::d)
      .def_readonly("kappa", &KappaRow::kappa)
      .def_readonly("argmax", &KappaRow::argmax)
      .def_readonly("trivial_bound", &KappaRow::trivial_bound)
      .def_readonly("family_size", &KappaRow::family_size)
      .def("to_json", [](const KappaRow& r) { return to_json(r).dump(); })
      .def("__repr__", [](const KappaRow& r) {
        return "KappaRow(d=" + std::to_string(r.d) + ", kappa=" + std::to_string(r.kappa) + ")";
      });

  m.def("pair_candidate", py::overload_cast<u64, u64, u64>(&pair_candidate), py::arg("d"),
        py::arg("k1"), py::arg("k2"));
  m.def("trivial_bound", &trivial_bound, py::arg("d"),
        py::arg("family_size") = kDefaultFamilySize);
  m.def("kappa", py::overload_cast<u64, std::size_t>(&kappa), py::arg("d"),
        py::arg("family_size") = kDefaultFamilySize);
  m.def("kappa_table", &kappa_table, py::arg("d_from"), py::arg("d_to"),
        py::arg("family_size") = kDefaultFamilySize, py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<Witness>(m, "Witness")
      .def_readonly("d", &Witness::d)
      .def_readonly("l", &Witness::l)
      .def_readonly("family_size", &Witness::family_size)
      .def_readonly("pair", &Witness::pair)
      .def_readonly("r", &Witness::r)
      .def_readonly("p1", &Witness::p1)
      .def_readonly("p2", &Witness::p2)
      .def_readonly("m1", &Witness::m1)
      .def_readonly("m2", &Witness::m2)
      .def_readonly("h", &Witness::h)
      .def_readonly("n", &Witness::n)
      .def_readonly("phi_common", &Witness::phi_common)
      .def_property_readonly("pair_strategy",
                             [](const Witness& w) { return std::string(to_string(w.strategy.kind)); })
      .def("to_json", [](const Witness& w) { return to_json(w).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return witness_from_json(Json::parse(text)); });

  m.def("find_r", &find_r, py::arg("pair"), py::arg("l"), py::arg("r_start"), py::arg("r_limit"),
        py::arg("jobs") = 1);
  m.def(
      "build_witness",
      [](const PairCandidate& pair, u64 l, u64 r, std::size_t family_size) {
        return build_witness(pair, l, r, family_size);
      },
      py::arg("pair"), py::arg("l"), py::arg("r"), py::arg("family_size") = kDefaultFamilySize);
  m.def(
      "verify_witness", [](const Witness& w) { return verify_witness(w).failures; },
      py::arg("witness"), "List of failed checks; empty when the witness holds.");
  m.def(
      "stream_witnesses",
      [](u64 d, u64 l, std::size_t count, const std::string& strategy, std::optional<u64> k1,
         std::optional<u64> k2, std::size_t family_size, u64 r_start, u64 max_candidates,
         unsigned jobs) {
        SearchOptions options;
        options.family_size = family_size;
        options.r_start = r_start;
        options.max_candidates = max_candidates;
        options.jobs = jobs;
        return stream_witnesses(d, l, count, strategy_from(strategy, k1, k2), options);
      },
      py::arg("d"), py::arg("l"), py::arg("count") = 1, py::arg("strategy") = "argmax",
      py::arg("k1") = py::none(), py::arg("k2") = py::none(),
      py::arg("family_size") = kDefaultFamilySize, py::arg("r_start") = 0,
      py::arg("max_candidates") = SearchOptions{}.max_candidates, py::arg("jobs") = 1);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, unsigned jobs) {
        std::ostringstream out, err;
        const int code = cli::run(args, cli::Environment{jobs}, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("jobs") = 1,
      "Runs a CLI subcommand in-process; returns (exit_code, stdout, stderr).");
}
