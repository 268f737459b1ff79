// contexture: build empirical models from states and finite measurement
// sets, decide strong contextuality (assignment search + GF(2) parity
// certificates), compute the contextual fraction by LP, verify the
// closed-form outcome rules on measurement grids, and emit the
// entanglement-entropy curve.
//
// Exit codes: 0 success, 1 a verified property failed to hold, 2 usage or
// input error.  All commands are deterministic for fixed flags (sampled
// checks draw from --seed, default 0); CONTEXTURE_THREADS caps parallelism.

#include <CLI11.hpp>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "contexture/constructions.hpp"
#include "contexture/contextuality.hpp"
#include "contexture/empirical.hpp"
#include "contexture/json_io.hpp"
#include "contexture/rng.hpp"
#include "contexture/scenario.hpp"
#include "contexture/states.hpp"

namespace {

using nlohmann::json;
using namespace contexture;

constexpr double kPi = 3.141592653589793238462643383279502884;

struct Config {
  // gen-model
  std::string family;
  std::string state_path;
  std::string sites;
  std::string scenario_path;
  std::string out_path;
  int n = 3;
  double delta = kPi / 4.0;
  double alpha = kPi / 4.0;
  double beta_angle = kPi / 4.0;
  double gamma = kPi / 4.0;
  double a = 1.0 / 3.0, b = 1.0 / 3.0, c = 1.0 / 3.0, d = 0.0;
  std::vector<double> lambdas;
  double Phi = 0.0;
  // check
  std::string model_path;
  bool strong = false;
  bool fraction = false;
  int gf2_N = 0;
  // family
  int family_N = 2;
  bool full = false;
  // verify-theorem
  std::string theorem;
  int grid = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  // entropy-curve
  int curve_samples = 100;
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return json::parse(in);  // throws json::parse_error with byte position
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

json violations_to_json(const VerificationReport& report,
                        std::size_t limit = 20) {
  json list = json::array();
  for (std::size_t i = 0; i < report.violations.size() && i < limit; ++i) {
    const Violation& v = report.violations[i];
    list.push_back({{"context", v.context},
                    {"probability", round_sig(v.probability)}});
  }
  return list;
}

// --------------------------------------------------------------------------
// gen-model

int run_gen_model(const Config& cfg, bool have_lambda) {
  // State: from a JSON file or from family flags (one code path: the flags
  // are packed into the same JSON shape state files use).
  json state_spec;
  if (!cfg.state_path.empty()) {
    state_spec = read_json_file(cfg.state_path);
  } else if (!cfg.family.empty()) {
    json params = json::object();
    if (cfg.family == "ghz") params["n"] = cfg.n;
    if (cfg.family == "bipartite") params["delta"] = cfg.delta;
    if (cfg.family == "ghz_canonical") {
      params = {{"delta", cfg.delta},
                {"alpha", cfg.alpha},
                {"beta", cfg.beta_angle},
                {"gamma", cfg.gamma},
                {"phi_phase", cfg.Phi}};
    }
    if (cfg.family == "w_class") {
      params = {{"a", cfg.a}, {"b", cfg.b}, {"c", cfg.c}, {"d", cfg.d}};
    }
    if (cfg.family == "ghz_slocc" || cfg.family == "balanced") {
      if (!have_lambda) {
        throw std::invalid_argument("--family " + cfg.family +
                                    " needs --lambda l1,l2,...");
      }
      params["lambdas"] = cfg.lambdas;
      params["phi_phase"] = cfg.Phi;
      if (cfg.family == "ghz_slocc") params["delta"] = cfg.delta;
    }
    state_spec = {{"family", cfg.family}, {"params", params}};
  } else {
    throw std::invalid_argument("gen-model needs --family or --state");
  }
  StateVector psi = state_from_json(state_spec);

  Scenario sc;
  if (!cfg.sites.empty()) {
    sc = scenario_from_shorthand(cfg.sites);
  } else if (!cfg.scenario_path.empty()) {
    sc = scenario_from_json(read_json_file(cfg.scenario_path));
  } else {
    throw std::invalid_argument("gen-model needs --sites or --scenario");
  }
  if (sc.n_sites() != psi.n_qubits()) {
    throw std::invalid_argument(
        "scenario has " + std::to_string(sc.n_sites()) + " sites but the state has " +
        std::to_string(psi.n_qubits()) + " qubits");
  }

  EmpiricalModel model = build_model(psi, sc);
  std::ofstream out(cfg.out_path);
  if (!out) throw std::invalid_argument("cannot write file: " + cfg.out_path);
  out << model_to_json(model).dump(2) << "\n";
  std::cout << "wrote " << cfg.out_path << ": " << sc.n_contexts()
            << " contexts, " << sc.n_outcomes() << " outcomes per context\n";
  return 0;
}

// --------------------------------------------------------------------------
// check

int run_check(const Config& cfg) {
  EmpiricalModel model = model_from_json(read_json_file(cfg.model_path));
  bool do_fraction = cfg.fraction || (!cfg.strong && cfg.gf2_N == 0);

  Support support = support_of(model);
  SearchResult search = find_consistent_assignment(support);

  CheckReport report;
  report.strongly_contextual = !search.exists;
  report.witness = search.witness;
  if (do_fraction) {
    FractionResult fr = contextual_fraction(model);
    report.cf = fr.cf;
    report.ncf = fr.ncf;
  }
  if (cfg.gf2_N > 0) {
    auto [sys0, sys1] = family_support_to_gf2(support, cfg.gf2_N);
    report.gf2_unsat = {gf2_unsatisfiable(sys0), gf2_unsatisfiable(sys1)};
  }
  print_json(report_to_json(report, model.scenario));
  return 0;
}

// --------------------------------------------------------------------------
// family

int run_family(const Config& cfg) {
  if (cfg.family_N % 2 != 0) {
    std::cerr << "N must be even\n";
    return 2;
  }
  FamilyReport rep = family_report(cfg.family_N);

  // The fraction LP enumerates all 2^(2N+2) deterministic assignments when
  // that fits the full-enumeration budget; for larger N it needs column
  // generation, which --full opts into.
  std::optional<FractionResult> fr;
  int total_meas = 2 * cfg.family_N + 2;
  if (cfg.full || total_meas <= 12) {
    fr = contextual_fraction(build_model(rep.instance.state,
                                         rep.instance.scenario));
  }

  json j;
  j["N"] = rep.instance.N;
  j["m"] = rep.instance.m;
  j["lambda_N"] = round_sig(rep.instance.lambda_N);
  j["contexts"] = rep.instance.scenario.n_contexts();
  j["supports_match"] = rep.supports_match;
  j["strongly_contextual"] = !rep.search.exists;
  j["nodes_explored"] = rep.search.nodes_explored;
  j["gf2"] = {{"c_m0_unsat", rep.gf2_unsat_c0},
              {"c_m1_unsat", rep.gf2_unsat_c1},
              {"derived_matches_fixed", rep.derived_matches_fixed}};
  if (fr.has_value()) {
    j["cf"] = round_sig(fr->cf);
    j["ncf"] = round_sig(fr->ncf);
  } else {
    j["cf"] = nullptr;
    j["ncf"] = nullptr;
  }
  j["entropy_bits"] = round_sig(rep.entropy_bits);
  print_json(j);

  bool ok = rep.supports_match && !rep.search.exists && rep.gf2_unsat_c0 &&
            rep.gf2_unsat_c1 && rep.derived_matches_fixed;
  if (fr.has_value()) ok = ok && std::abs(fr->cf - 1.0) < 1e-6;
  return ok ? 0 : 1;
}

// --------------------------------------------------------------------------
// verify-theorem

std::vector<double> even_azimuths(int count) {
  std::vector<double> phis;
  for (int j = 0; j < count; ++j) phis.push_back(2.0 * kPi * j / count);
  return phis;
}

json verification_to_json(const VerificationReport& report) {
  return json{{"contexts_checked", report.contexts_checked},
              {"violations", report.violations.size()},
              {"violating_contexts", violations_to_json(report)},
              {"min_probability", round_sig(report.min_probability)}};
}

int run_verify_bipartite(const Config& cfg) {
  int g = cfg.grid > 0 ? cfg.grid : 12;
  std::vector<LocalMeasurement> axis = sphere_axis(g, g);
  Scenario sc(std::vector<std::vector<LocalMeasurement>>{axis, axis});
  VerificationReport rep =
      verify_assignment(bipartite(cfg.delta), assignment_bipartite(), sc);
  json j = verification_to_json(rep);
  j["theorem"] = "bipartite";
  j["delta"] = round_sig(cfg.delta);
  print_json(j);
  return rep.violations.empty() ? 0 : 1;
}

int run_verify_w(const Config& cfg, bool have_d) {
  double d = have_d ? cfg.d : 1.0 - (cfg.a + cfg.b + cfg.c);
  if (d < 0.0 && d > -1e-12) d = 0.0;
  int g = cfg.grid > 0 ? cfg.grid : 8;
  std::vector<LocalMeasurement> axis = sphere_axis(g, g);
  Scenario sc(std::vector<std::vector<LocalMeasurement>>{axis, axis, axis});
  VerificationReport rep =
      verify_assignment(w_class(cfg.a, cfg.b, cfg.c, d), assignment_w(), sc);
  json j = verification_to_json(rep);
  j["theorem"] = "w";
  j["coefficients"] = {{"a", round_sig(cfg.a)},
                       {"b", round_sig(cfg.b)},
                       {"c", round_sig(cfg.c)},
                       {"d", round_sig(d)}};
  print_json(j);
  return rep.violations.empty() ? 0 : 1;
}

int run_verify_ghz_n(const Config& cfg) {
  int g = cfg.grid > 0 ? cfg.grid : 8;
  if (cfg.n < 2 || cfg.n > 6) {
    throw std::invalid_argument("ghz-n grids support --n between 2 and 6");
  }
  // Polar samples plus the equator itself: the rule's only failure mode
  // lives at theta = pi/2 on every site at once, so the grid must contain
  // equatorial measurements for the verdict to be informative.
  std::vector<double> thetas;
  for (int i = 0; i < g; ++i) thetas.push_back(kPi * i / (g - 1));
  bool has_equator = false;
  for (double t : thetas) has_equator |= std::abs(t - kPi / 2.0) < 1e-9;
  if (!has_equator) thetas.push_back(kPi / 2.0);
  Scenario sc = grid_product(cfg.n, thetas, even_azimuths(g));
  VerificationReport rep = verify_assignment(
      ghz_state(cfg.n), replicate(assignment_north(), cfg.n), sc);

  // The claim under test: violations occur only when every site measures on
  // the equator.
  bool confined = true;
  for (const Violation& v : rep.violations) {
    for (int s = 0; s < sc.n_sites(); ++s) {
      if (std::abs(sc.measurement(s, v.context[s]).theta - kPi / 2.0) >
          1e-12) {
        confined = false;
      }
    }
  }
  json j = verification_to_json(rep);
  j["theorem"] = "ghz-n";
  j["n"] = cfg.n;
  j["violations_all_equatorial"] = confined;
  print_json(j);
  return confined ? 0 : 1;
}

int run_verify_balanced(const Config& cfg, bool have_params) {
  int g = cfg.grid > 0 ? cfg.grid : 8;
  std::vector<double> phis = even_azimuths(g);
  json j;
  j["theorem"] = "balanced";
  if (have_params) {
    std::vector<double> ls =
        cfg.lambdas.empty() ? std::vector<double>{0.3, 0.3, 0.3} : cfg.lambdas;
    EquatorialCheckReport rep =
        unbalanced_equatorial_check(cfg.delta, ls, cfg.Phi, phis);
    j["delta"] = round_sig(cfg.delta);
    j["events_checked"] = rep.events_checked;
    j["violations"] = rep.violations;
    j["min_gap"] = round_sig(rep.min_gap);
    j["min_probability"] = round_sig(rep.min_probability);
    print_json(j);
    return rep.violations == 0 ? 0 : 1;
  }
  // Sampled mode: delta strictly below pi/4, free lambdas and global phase.
  int n_samples = cfg.samples > 0 ? cfg.samples : 20;
  SplitMix64 rng(cfg.seed);
  std::uint64_t total_violations = 0;
  double worst_gap = 1.0;
  double worst_prob = 1.0;
  json runs = json::array();
  for (int s = 0; s < n_samples; ++s) {
    double delta = rng.uniform(kPi / 16.0, kPi / 4.0 - 0.1);
    std::vector<double> ls = {rng.uniform(0.0, kPi / 3.0),
                              rng.uniform(0.0, kPi / 3.0),
                              rng.uniform(0.0, kPi / 3.0)};
    double Phi = rng.uniform(0.0, 2.0 * kPi);
    EquatorialCheckReport rep =
        unbalanced_equatorial_check(delta, ls, Phi, phis);
    total_violations += rep.violations;
    worst_gap = std::min(worst_gap, rep.min_gap);
    worst_prob = std::min(worst_prob, rep.min_probability);
    runs.push_back({{"delta", round_sig(delta)},
                    {"violations", rep.violations}});
  }
  j["samples"] = n_samples;
  j["seed"] = cfg.seed;
  j["violations"] = total_violations;
  j["worst_min_gap"] = round_sig(worst_gap);
  j["worst_min_probability"] = round_sig(worst_prob);
  j["runs"] = runs;
  print_json(j);
  return total_violations == 0 ? 0 : 1;
}

int run_verify_prop_lambda(const Config& cfg) {
  std::vector<double> ls =
      cfg.lambdas.empty() ? std::vector<double>{0.6, 0.6, 0.6} : cfg.lambdas;
  if (ls.size() != 3) {
    throw std::invalid_argument("prop-lambda needs --lambda l1,l2,l3");
  }
  double sum = ls[0] + ls[1] + ls[2];
  if (sum <= kPi / 2.0) {
    throw std::invalid_argument(
        "prop-lambda applies when lambda_1 + lambda_2 + lambda_3 > pi/2");
  }
  for (double l : ls) {
    if (l < 0.0 || l >= kPi / 2.0) {
      throw std::invalid_argument("prop-lambda lambdas must lie in [0, pi/2)");
    }
  }
  int g = cfg.grid > 0 ? cfg.grid : 16;
  std::vector<double> phis = even_azimuths(g);
  std::vector<std::vector<LocalMeasurement>> sites(3, equatorial_axis(phis));
  Scenario sc(sites);
  StateVector psi = balanced(ls, 0.0);
  SiteAssignment rule = assignment_equatorial();
  VerificationReport rep = verify_assignment(psi, replicate(rule, 3), sc);

  // Companion bound: with every selected azimuth reduced to (-pi/2, pi/2],
  // |sum_i beta(lambda_i, psi_i)| <= 3 pi/2 - sum(lambda) < pi at every grid
  // point, which is why the selected events cannot vanish.
  double bound = 3.0 * kPi / 2.0 - sum;
  double max_abs_beta_sum = 0.0;
  bool bound_holds = true;
  std::array<std::vector<double>, 3> site_beta;
  for (int s = 0; s < 3; ++s) {
    for (double phi : phis) {
      LocalMeasurement m(kPi / 2.0, phi);
      PlusEvent ev = reduce_to_plus(m, rule(m));
      double psi_az = std::remainder(ev.measurement.phi, 2.0 * kPi);
      site_beta[s].push_back(beta(ls[s], psi_az));
    }
  }
  for (double b0 : site_beta[0]) {
    for (double b1 : site_beta[1]) {
      for (double b2 : site_beta[2]) {
        double abs_sum = std::abs(b0 + b1 + b2);
        max_abs_beta_sum = std::max(max_abs_beta_sum, abs_sum);
        if (abs_sum > bound + 1e-9 || abs_sum >= kPi) bound_holds = false;
      }
    }
  }

  json j = verification_to_json(rep);
  j["theorem"] = "prop-lambda";
  j["lambdas"] = {round_sig(ls[0]), round_sig(ls[1]), round_sig(ls[2])};
  j["lambda_sum"] = round_sig(sum);
  j["beta_sum_bound"] = round_sig(bound);
  j["max_abs_beta_sum"] = round_sig(max_abs_beta_sum);
  j["beta_bound_holds"] = bound_holds;
  print_json(j);
  return (rep.violations.empty() && bound_holds) ? 0 : 1;
}

// --------------------------------------------------------------------------
// entropy-curve

int run_entropy_curve(const Config& cfg) {
  if (cfg.curve_samples < 2) {
    throw std::invalid_argument("--samples must be at least 2");
  }
  std::vector<EntropyPoint> curve = entropy_curve(cfg.curve_samples);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      throw std::invalid_argument("cannot write file: " + cfg.out_path);
    }
    out = &file;
  }
  (*out) << "lambda,entropy_bits\n";
  char buf[80];
  for (const EntropyPoint& p : curve) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", p.lambda, p.entropy_bits);
    (*out) << buf;
  }
  if (!cfg.out_path.empty()) {
    std::cout << "wrote " << cfg.out_path << ": " << curve.size()
              << " samples from (0, " << round_sig(curve.front().entropy_bits)
              << ") to (pi/2, " << round_sig(curve.back().entropy_bits)
              << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "contexture: empirical models, strong contextuality, contextual "
      "fraction, and closed-form outcome rules for qubit states"};
  app.require_subcommand(1);
  Config cfg;

  auto* gen = app.add_subcommand(
      "gen-model", "Build a Born-rule model file from a state and scenario");
  gen->add_option("--family", cfg.family,
                  "State family: ghz | w | bipartite | ghz_canonical | "
                  "w_class | ghz_slocc | balanced");
  gen->add_option("--state", cfg.state_path, "State spec JSON file");
  gen->add_option("--sites", cfg.sites,
                  "Scenario shorthand: sites split by ';', tokens X, Y, Z or "
                  "(theta,phi) in radians");
  gen->add_option("--scenario", cfg.scenario_path, "Scenario JSON file");
  gen->add_option("--out", cfg.out_path, "Output .model.json path")
      ->required();
  gen->add_option("--n", cfg.n, "Qubit count (family ghz)");
  gen->add_option("--delta", cfg.delta, "Balance angle");
  gen->add_option("--alpha", cfg.alpha, "First factor angle (ghz_canonical)");
  gen->add_option("--beta", cfg.beta_angle,
                  "Second factor angle (ghz_canonical)");
  gen->add_option("--gamma", cfg.gamma, "Third factor angle (ghz_canonical)");
  gen->add_option("--a", cfg.a, "w_class coefficient a");
  gen->add_option("--b", cfg.b, "w_class coefficient b");
  gen->add_option("--c", cfg.c, "w_class coefficient c");
  gen->add_option("--d", cfg.d, "w_class coefficient d");
  auto* gen_lambda = gen->add_option(
      "--lambda",
      [&cfg](const std::vector<std::string>& vals) {
        cfg.lambdas = parse_double_list(vals.at(0));
        return true;
      },
      "Comma-separated factor angles (ghz_slocc, balanced)");
  gen->add_option("--Phi", cfg.Phi, "Global phase");

  auto* check = app.add_subcommand(
      "check", "Analyze a model file: assignment search, fraction LP, GF(2)");
  check->add_option("model", cfg.model_path, "Model .json file")->required();
  check->add_flag("--strong", cfg.strong,
                  "Report only the strong-contextuality verdict");
  check->add_flag("--fraction", cfg.fraction,
                  "Compute the contextual fraction LP");
  check->add_option("--gf2", cfg.gf2_N,
                    "Derive and test the two GF(2) parity systems for a "
                    "family-shaped support with this N");

  auto* family = app.add_subcommand(
      "family",
      "Full analysis of the equatorial family instance for one even N");
  family->add_option("--N", cfg.family_N, "Even family size >= 2")->required();
  family->add_flag("--full", cfg.full,
                   "Force the fraction LP even when it needs column "
                   "generation");

  auto* verify = app.add_subcommand(
      "verify-theorem", "Check a closed-form outcome rule on a grid");
  verify
      ->add_option("--theorem", cfg.theorem,
                   "bipartite | w | ghz-n | balanced | prop-lambda")
      ->required()
      ->check(CLI::IsMember(
          {"bipartite", "w", "ghz-n", "balanced", "prop-lambda"}));
  verify->add_option("--delta", cfg.delta, "Balance angle");
  verify->add_option("--n", cfg.n, "Qubit count (ghz-n)");
  verify->add_option("--a", cfg.a, "w coefficient a");
  verify->add_option("--b", cfg.b, "w coefficient b");
  verify->add_option("--c", cfg.c, "w coefficient c");
  auto* verify_d = verify->add_option("--d", cfg.d, "w coefficient d");
  verify->add_option(
      "--lambda",
      [&cfg](const std::vector<std::string>& vals) {
        cfg.lambdas = parse_double_list(vals.at(0));
        return true;
      },
      "Comma-separated lambdas (balanced, prop-lambda)");
  auto* verify_phi = verify->add_option("--Phi", cfg.Phi, "Global phase");
  verify->add_option("--grid", cfg.grid,
                     "Grid density per axis (defaults per theorem)");
  verify->add_option("--samples", cfg.samples,
                     "Sample count for the balanced sweep (default 20)");
  verify->add_option("--seed", cfg.seed, "Seed for sampled checks");
  auto* verify_delta = verify->get_option("--delta");
  auto* verify_lambda = verify->get_option("--lambda");

  auto* curve = app.add_subcommand(
      "entropy-curve",
      "Entanglement entropy of the third qubit along the lambda line, CSV");
  curve->add_option("--samples", cfg.curve_samples,
                    "Number of samples across [0, pi/2] (default 100)");
  curve->add_option("--out", cfg.out_path, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(gen)) {
      return run_gen_model(cfg, gen_lambda->count() > 0);
    }
    if (app.got_subcommand(check)) return run_check(cfg);
    if (app.got_subcommand(family)) return run_family(cfg);
    if (app.got_subcommand(verify)) {
      if (cfg.theorem == "bipartite") return run_verify_bipartite(cfg);
      if (cfg.theorem == "w") {
        return run_verify_w(cfg, verify_d->count() > 0);
      }
      if (cfg.theorem == "ghz-n") return run_verify_ghz_n(cfg);
      if (cfg.theorem == "balanced") {
        bool have_params = verify_delta->count() > 0 ||
                           verify_lambda->count() > 0 ||
                           verify_phi->count() > 0;
        return run_verify_balanced(cfg, have_params);
      }
      return run_verify_prop_lambda(cfg);
    }
    if (app.got_subcommand(curve)) return run_entropy_curve(cfg);
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
