// Python bindings for the contexture core: state constructors, Born-rule
// model building, the contextuality deciders (assignment search, fraction
// LP, GF(2) certificates), the closed-form outcome-rule checks, and the
// entropy curve.  Containers cross the boundary as plain lists/tuples/dicts
// so the python side needs no wrapper types beyond what pybind11 generates.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "contexture/constructions.hpp"
#include "contexture/contextuality.hpp"
#include "contexture/empirical.hpp"
#include "contexture/json_io.hpp"
#include "contexture/linalg.hpp"
#include "contexture/scenario.hpp"
#include "contexture/states.hpp"

namespace py = pybind11;
using namespace contexture;

namespace {

Scenario scenario_from_lists(
    const std::vector<std::vector<std::pair<double, double>>>& sites) {
  std::vector<std::vector<LocalMeasurement>> ms;
  for (const auto& site : sites) {
    std::vector<LocalMeasurement> axis;
    for (const auto& [theta, phi] : site) axis.emplace_back(theta, phi);
    ms.push_back(std::move(axis));
  }
  return Scenario(std::move(ms));
}

py::dict search_to_dict(const SearchResult& r) {
  py::dict d;
  d["exists"] = r.exists;
  d["nodes_explored"] = r.nodes_explored;
  if (r.witness.has_value()) {
    d["witness"] = *r.witness;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

py::dict family_report_to_dict(const FamilyReport& rep) {
  py::dict d;
  d["N"] = rep.instance.N;
  d["m"] = rep.instance.m;
  d["lambda_N"] = rep.instance.lambda_N;
  d["supports_match"] = rep.supports_match;
  d["strongly_contextual"] = !rep.search.exists;
  d["nodes_explored"] = rep.search.nodes_explored;
  d["gf2_unsat_c0"] = rep.gf2_unsat_c0;
  d["gf2_unsat_c1"] = rep.gf2_unsat_c1;
  d["derived_matches_fixed"] = rep.derived_matches_fixed;
  d["entropy_bits"] = rep.entropy_bits;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Empirical models, strong contextuality, contextual fraction, and "
      "closed-form outcome rules for finite qubit measurement scenarios";

  py::class_<LocalMeasurement>(m, "LocalMeasurement")
      .def(py::init<double, double>(), py::arg("theta"), py::arg("phi"))
      .def_readonly("theta", &LocalMeasurement::theta)
      .def_readonly("phi", &LocalMeasurement::phi)
      .def("__repr__", [](const LocalMeasurement& mm) {
        return "LocalMeasurement(theta=" + std::to_string(mm.theta) +
               ", phi=" + std::to_string(mm.phi) + ")";
      });
  m.def("negate", &negate, py::arg("m"),
        "Same observable with outcome labels swapped");

  py::class_<Scenario>(m, "Scenario")
      .def(py::init(&scenario_from_lists), py::arg("sites"),
           "sites: list per site of (theta, phi) tuples")
      .def_property_readonly("n_sites", &Scenario::n_sites)
      .def_property_readonly("n_contexts", &Scenario::n_contexts)
      .def_property_readonly("n_outcomes", &Scenario::n_outcomes)
      .def("contexts", &Scenario::contexts)
      .def("measurement", &Scenario::measurement, py::arg("site"),
           py::arg("index"));
  m.def("scenario_from_shorthand", &scenario_from_shorthand, py::arg("text"),
        "Parse \"X,Y;X,Y\"-style shorthand into a Scenario");

  py::class_<StateVector>(m, "StateVector")
      .def_property_readonly("n_qubits", &StateVector::n_qubits)
      .def_property_readonly("amplitudes", &StateVector::amplitudes)
      .def("norm", &StateVector::norm);
  m.def("ghz_state", &ghz_state, py::arg("n"));
  m.def("w_state", &w_state);
  m.def("bipartite", &bipartite, py::arg("delta"));
  m.def("ghz_canonical", &ghz_canonical, py::arg("delta"), py::arg("alpha"),
        py::arg("beta"), py::arg("gamma"), py::arg("phi_phase"));
  m.def("w_class", &w_class, py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("d"));
  m.def("ghz_slocc", &ghz_slocc, py::arg("delta"), py::arg("lambdas"),
        py::arg("phi_phase"));
  m.def("balanced", &balanced, py::arg("lambdas"), py::arg("phi_phase"));

  py::class_<EmpiricalModel>(m, "EmpiricalModel")
      .def_readonly("scenario", &EmpiricalModel::scenario)
      .def_readonly("table", &EmpiricalModel::table)
      .def("to_json", [](const EmpiricalModel& model) {
        return model_to_json(model).dump(2);
      });
  m.def("model_from_json", [](const std::string& text) {
    return model_from_json(nlohmann::json::parse(text));
  });
  m.def("build_model", &build_model, py::arg("state"), py::arg("scenario"),
        "Born-rule probability table over every context");

  py::class_<Support>(m, "Support")
      .def_readonly("scenario", &Support::scenario)
      .def_readonly("possible", &Support::possible);
  m.def("support_of", &support_of, py::arg("model"),
        py::arg("eps") = kSupportEps);
  m.def(
      "no_signalling_check",
      [](const EmpiricalModel& model, double tol) {
        NoSignallingReport r = no_signalling_check(model, tol);
        return py::make_tuple(r.ok, r.worst_violation);
      },
      py::arg("model"), py::arg("tol") = 1e-9,
      "Returns (ok, worst marginal discrepancy)");

  m.def(
      "find_consistent_assignment",
      [](const Support& s) { return search_to_dict(find_consistent_assignment(s)); },
      py::arg("support"),
      "Backtracking search for a global assignment inside the support");
  m.def("logically_contextual_events", &logically_contextual_events,
        py::arg("support"));
  m.def(
      "contextual_fraction",
      [](const EmpiricalModel& model) {
        FractionResult r = contextual_fraction(model);
        return py::make_tuple(r.ncf, r.cf);
      },
      py::arg("model"), "Returns (noncontextual fraction, contextual fraction)");

  py::class_<Gf2System>(m, "Gf2System")
      .def_readonly("num_vars", &Gf2System::num_vars)
      .def_readonly("var_names", &Gf2System::var_names)
      .def_readonly("rows", &Gf2System::rows)
      .def_readonly("rhs", &Gf2System::rhs);
  m.def("gf2_unsatisfiable", &gf2_unsatisfiable, py::arg("system"));
  m.def("family_gf2_system", &family_gf2_system, py::arg("N"),
        py::arg("c_m_value"));
  m.def("family_support_to_gf2", &family_support_to_gf2, py::arg("support"),
        py::arg("N"));

  m.def(
      "family_report",
      [](int N) { return family_report_to_dict(family_report(N)); },
      py::arg("N"),
      "Support match, assignment search, GF(2) certificates, and entropy "
      "for the equatorial family at one even N");
  m.def(
      "family_scenario",
      [](int N) {
        FamilyInstance inst = family_instance(N);
        return py::make_tuple(inst.state, inst.scenario, inst.lambda_N);
      },
      py::arg("N"), "Returns (state, scenario, lambda_N)");

  m.def("beta", &beta, py::arg("lam"), py::arg("phi"));
  m.def("beta_derivative", &beta_derivative, py::arg("lam"), py::arg("phi"));
  m.def(
      "vanishing_condition",
      [](const std::array<double, 3>& lambdas, double phi_phase,
         const std::array<double, 3>& phis) {
        VanishingCheck c = vanishing_condition(lambdas, phi_phase, phis);
        return py::make_tuple(c.vanishes, c.distance);
      },
      py::arg("lambdas"), py::arg("phi_phase"), py::arg("phis"),
      "Returns (vanishes, circular distance)");

  m.def("entropy_at", &entropy_at, py::arg("lam"));
  m.def(
      "entropy_curve",
      [](int samples) {
        std::vector<std::pair<double, double>> out;
        for (const EntropyPoint& p : entropy_curve(samples)) {
          out.emplace_back(p.lambda, p.entropy_bits);
        }
        return out;
      },
      py::arg("samples"), "List of (lambda, entropy_bits) spanning [0, pi/2]");
}
