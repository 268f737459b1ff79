#include "contexture/constructions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parallel.hpp"

namespace contexture {

namespace {

constexpr double kPi = std::numbers::pi;

// Zero threshold for selected-outcome probabilities in verify_assignment.
// Far below any probability the deterministic rules can legally select on
// the states they are stated for.
constexpr double kZeroTol = 1e-14;

// Canonical azimuth [0, 2pi) shifted into [lo, lo + 2pi).
double shift_azimuth(double phi, double lo) {
  return phi >= lo + 2.0 * kPi ? phi - 2.0 * kPi
         : phi < lo            ? phi + 2.0 * kPi
                               : phi;
}

}  // namespace

// ---------------------------------------------------------------------------
// Deterministic assignments

AssignmentFn assignment_bipartite() {
  // Both sites: +1 on the southern pole and the azimuth half-circle around
  // phi = 0; the two sites close the interval on opposite ends so that no
  // pair of selected azimuths can sum to pi.
  SiteAssignment first = [](const LocalMeasurement& m) -> Outcome {
    if (m.theta == kPi) return +1;
    if (m.theta == 0.0) return -1;
    double phi = shift_azimuth(m.phi, -kPi / 2.0);  // [-pi/2, 3pi/2)
    return phi >= -kPi / 2.0 && phi < kPi / 2.0 ? +1 : -1;
  };
  SiteAssignment second = [](const LocalMeasurement& m) -> Outcome {
    if (m.theta == kPi) return +1;
    if (m.theta == 0.0) return -1;
    double phi = shift_azimuth(m.phi, -kPi / 2.0);  // [-pi/2, 3pi/2)
    // Membership in (-pi/2, pi/2]: azimuth exactly -pi/2 (canonical 3pi/2)
    // shifts to -pi/2 and the strict lower bound sends it to -1, so the
    // half-open ends flip relative to the first site.
    return phi > -kPi / 2.0 && phi <= kPi / 2.0 ? +1 : -1;
  };
  return AssignmentFn{{first, second}};
}

AssignmentFn assignment_w() {
  // Shared rule on the first two sites: +1 on the northern pole and the
  // azimuth half-circle (-pi, 0] — canonically phi = 0 or phi in (pi, 2pi).
  // Every selected phase factor e^{-i phi} then has nonnegative imaginary
  // part, and only phi = 0 makes it real (value +1), so the terms of the
  // selected amplitude can never cancel.  The interval must be open at pi:
  // phi = pi would contribute a real negative factor.  The third site flips
  // the pole conditions.
  SiteAssignment h = [](const LocalMeasurement& m) -> Outcome {
    if (m.theta == 0.0) return +1;
    if (m.theta == kPi) return -1;
    return (m.phi == 0.0 || m.phi > kPi) ? +1 : -1;
  };
  SiteAssignment g3 = [](const LocalMeasurement& m) -> Outcome {
    if (m.theta == kPi) return +1;
    if (m.theta == 0.0) return -1;
    return (m.phi == 0.0 || m.phi > kPi) ? +1 : -1;
  };
  return AssignmentFn{{h, h, g3}};
}

SiteAssignment assignment_north() {
  return [](const LocalMeasurement& m) -> Outcome {
    return m.theta <= kPi / 2.0 ? +1 : -1;
  };
}

SiteAssignment assignment_equatorial() {
  return [](const LocalMeasurement& m) -> Outcome {
    if (m.theta < kPi / 2.0) return +1;
    if (m.theta > kPi / 2.0) return -1;
    double phi = shift_azimuth(m.phi, -kPi / 2.0);
    return phi > -kPi / 2.0 && phi <= kPi / 2.0 ? +1 : -1;
  };
}

AssignmentFn replicate(const SiteAssignment& rule, int n_sites) {
  AssignmentFn fn;
  fn.sites.assign(n_sites, rule);
  return fn;
}

VerificationReport verify_assignment(const StateVector& psi,
                                     const AssignmentFn& fn,
                                     const Scenario& grid) {
  if (static_cast<int>(fn.sites.size()) != grid.n_sites()) {
    throw std::invalid_argument("verify_assignment: rule/site count mismatch");
  }
  const std::vector<Context> ctxs = grid.contexts();
  std::vector<double> probs(ctxs.size());
  detail::parallel_for(ctxs.size(), [&](std::size_t c) {
    JointOutcome o(grid.n_sites());
    for (int s = 0; s < grid.n_sites(); ++s) {
      o[s] = fn.sites[s](grid.measurement(s, ctxs[c][s]));
    }
    probs[c] = std::norm(amplitude(psi, grid, ctxs[c], o));
  });

  VerificationReport report;
  report.contexts_checked = ctxs.size();
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    if (probs[c] < report.min_probability) report.min_probability = probs[c];
    if (probs[c] < kZeroTol) report.violations.push_back({ctxs[c], probs[c]});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Measurement grids

Scenario grid_product(int n_sites, const std::vector<double>& thetas,
                      const std::vector<double>& phis) {
  std::vector<LocalMeasurement> axis;
  axis.reserve(thetas.size() * phis.size());
  for (double t : thetas) {
    for (double p : phis) axis.emplace_back(t, p);
  }
  return Scenario(std::vector<std::vector<LocalMeasurement>>(n_sites, axis));
}

std::vector<LocalMeasurement> sphere_axis(int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 1) {
    throw std::invalid_argument("sphere_axis: need >= 2 thetas, >= 1 phi");
  }
  std::vector<LocalMeasurement> axis;
  axis.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    double theta = kPi * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      axis.emplace_back(theta, 2.0 * kPi * j / n_phi);
    }
  }
  return axis;
}

std::vector<LocalMeasurement> equatorial_axis(const std::vector<double>& phis) {
  std::vector<LocalMeasurement> axis;
  axis.reserve(phis.size());
  for (double p : phis) axis.emplace_back(kPi / 2.0, p);
  return axis;
}

// ---------------------------------------------------------------------------
// Equatorial response and vanishing

double beta(double lambda, double phi) {
  if (!(lambda >= 0.0 && lambda < kPi / 2.0)) {
    throw std::domain_error("beta: lambda must lie in [0, pi/2)");
  }
  double h = lambda / 2.0;
  // The denominator is bounded below by cos(h) - sin(h) > 0, so the
  // two-argument arctangent stays on the principal branch and beta is
  // continuous in phi with beta(lambda, phi + 2pi) = beta(lambda, phi) + 2pi.
  return phi - 2.0 * std::atan2(std::sin(h) * std::sin(phi),
                                std::cos(h) + std::sin(h) * std::cos(phi));
}

double beta_derivative(double lambda, double phi) {
  if (!(lambda >= 0.0 && lambda < kPi / 2.0)) {
    throw std::domain_error("beta_derivative: lambda must lie in [0, pi/2)");
  }
  return std::cos(lambda) / (1.0 + std::cos(phi) * std::sin(lambda));
}

VanishingCheck vanishing_condition(const std::array<double, 3>& lambdas,
                                   double phi_phase,
                                   const std::array<double, 3>& phis) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += beta(lambdas[i], phis[i]);
  double distance = std::remainder(sum - (kPi + phi_phase), 2.0 * kPi);
  return VanishingCheck{distance, std::abs(distance) < 1e-9};
}

std::pair<double, double> overlap_moduli(const LocalMeasurement& m,
                                         double lambda) {
  StateVector probe = eigenstate(m, +1);
  return {std::abs(inner(probe, v_factor(lambda))),
          std::abs(inner(probe, w_factor(lambda)))};
}

// ---------------------------------------------------------------------------
// Unsatisfiable equatorial families

FamilyInstance family_instance(int N) {
  if (N < 2 || N % 2 != 0) {
    throw std::invalid_argument("family_instance: N must be even and >= 2");
  }
  if (N > 16) {
    throw std::invalid_argument("family_instance: N too large for search");
  }
  FamilyInstance inst;
  inst.N = N;
  inst.m = N / 2;
  inst.lambda_N = kPi / 2.0 - kPi / N;
  inst.state = balanced({0.0, 0.0, inst.lambda_N}, 0.0);

  std::vector<double> full;
  full.reserve(N);
  for (int i = 0; i < N; ++i) full.push_back(kPi * i / N);
  std::vector<std::vector<LocalMeasurement>> sites{
      equatorial_axis(full), equatorial_axis(full),
      equatorial_axis({0.0, kPi / 2.0})};
  inst.scenario = Scenario(std::move(sites));
  return inst;
}

Support exact_family_support(int N) {
  FamilyInstance inst = family_instance(N);
  const Scenario& sc = inst.scenario;
  Support support{sc, {}};
  // In units of pi/N the vanishing condition for context (i, j, k) with
  // outcome bits (a, b, c) reads i + aN + j + bN + B(k, c) = N (mod 2N),
  // where B(0, c) = cN and B(m, c) = (-1)^c.  Solving the congruence per
  // case gives the zero sets below; everything else is possible.
  for (const Context& ctx : sc.contexts()) {
    int i = ctx[0];
    int j = ctx[1];
    bool k_is_m = ctx[2] == 1;
    std::vector<bool> mask(sc.n_outcomes());
    for (std::size_t o = 0; o < sc.n_outcomes(); ++o) {
      int a = static_cast<int>((o >> 2) & 1u);
      int b = static_cast<int>((o >> 1) & 1u);
      int c = static_cast<int>(o & 1u);
      bool zero;
      if (!k_is_m) {
        zero = ((a ^ b ^ c) == 0 && i + j == N) ||
               ((a ^ b ^ c) == 1 && i + j == 0);
      } else {
        zero = ((a ^ b) == 0 && c == 0 && i + j == N - 1) ||
               ((a ^ b) == 0 && c == 1 && i + j == N + 1) ||
               ((a ^ b) == 1 && c == 1 && i + j == 1);
      }
      mask[o] = !zero;
    }
    support.possible.push_back(std::move(mask));
  }
  return support;
}

namespace {

Gf2System family_gf2_base(int N) {
  Gf2System sys;
  sys.num_vars = 2 * N + 2;
  sys.var_names.reserve(sys.num_vars);
  for (int i = 0; i < N; ++i) sys.var_names.push_back("a_" + std::to_string(i));
  for (int j = 0; j < N; ++j) sys.var_names.push_back("b_" + std::to_string(j));
  sys.var_names.push_back("c_0");
  sys.var_names.push_back("c_m");
  return sys;
}

void add_equation(Gf2System& sys, const std::vector<int>& vars, uint8_t rhs) {
  std::vector<uint8_t> row(sys.num_vars, 0);
  for (int v : vars) row[v] = 1;
  sys.rows.push_back(std::move(row));
  sys.rhs.push_back(rhs);
}

}  // namespace

Gf2System family_gf2_system(int N, int c_m_value) {
  if (N < 2 || N % 2 != 0) {
    throw std::invalid_argument("family_gf2_system: N must be even and >= 2");
  }
  if (c_m_value != 0 && c_m_value != 1) {
    throw std::invalid_argument("family_gf2_system: branch must be 0 or 1");
  }
  const int a0 = 0, b0 = N, c0 = 2 * N;
  Gf2System sys = family_gf2_base(N);

  // Contexts using the k = 0 measurement, common to both branches.
  add_equation(sys, {a0 + 0, b0 + 0, c0}, 0);
  for (int i = 1; i <= N - 1; ++i) {
    add_equation(sys, {a0 + i, b0 + (N - i), c0}, 1);
  }

  // Contexts using the k = m measurement, conditioned on its outcome.
  if (c_m_value == 0) {
    for (int i = 0; i <= N - 1; ++i) {
      add_equation(sys, {a0 + i, b0 + (N - i - 1)}, 1);
    }
  } else {
    add_equation(sys, {a0 + 0, b0 + 1}, 0);
    add_equation(sys, {a0 + 1, b0 + 0}, 0);
    for (int i = 2; i <= N - 1; ++i) {
      add_equation(sys, {a0 + i, b0 + (N + 1 - i)}, 1);
    }
  }
  return sys;
}

std::pair<Gf2System, Gf2System> family_support_to_gf2(const Support& support,
                                                      int N) {
  const Scenario& sc = support.scenario;
  if (sc.n_sites() != 3 ||
      sc.sites()[0].size() != static_cast<std::size_t>(N) ||
      sc.sites()[1].size() != static_cast<std::size_t>(N) ||
      sc.sites()[2].size() != 2) {
    throw std::invalid_argument(
        "family_support_to_gf2: support is not over the family scenario");
  }
  const int a0 = 0, b0 = N, c0 = 2 * N;
  std::pair<Gf2System, Gf2System> out{family_gf2_base(N), family_gf2_base(N)};

  const std::vector<Context> ctxs = sc.contexts();
  for (std::size_t cidx = 0; cidx < ctxs.size(); ++cidx) {
    int i = ctxs[cidx][0];
    int j = ctxs[cidx][1];
    bool k_is_m = ctxs[cidx][2] == 1;
    const std::vector<bool>& mask = support.possible[cidx];

    if (!k_is_m) {
      // A hole set here must be a full parity class {a + b + c = t}: the
      // assignment's outcome must land in the complementary class.
      int impossible = 0;
      int t = -1;
      bool pure = true;
      for (std::size_t o = 0; o < 8; ++o) {
        if (mask[o]) continue;
        ++impossible;
        int parity = ((o >> 2) ^ (o >> 1) ^ o) & 1;
        if (t == -1) t = parity;
        pure = pure && parity == t;
      }
      if (impossible == 0) continue;
      if (!pure || impossible != 4) {
        throw std::invalid_argument(
            "family_support_to_gf2: holes do not form a parity class");
      }
      add_equation(out.first, {a0 + i, b0 + j, c0},
                   static_cast<uint8_t>(1 ^ t));
      add_equation(out.second, {a0 + i, b0 + j, c0},
                   static_cast<uint8_t>(1 ^ t));
    } else {
      // Slice by the third-site outcome: holes with c = gamma constrain
      // assignments that set c_m = gamma, independently per branch.
      for (int gamma = 0; gamma < 2; ++gamma) {
        int impossible = 0;
        int t = -1;
        bool pure = true;
        for (std::size_t o = 0; o < 8; ++o) {
          if (static_cast<int>(o & 1u) != gamma || mask[o]) continue;
          ++impossible;
          int parity = ((o >> 2) ^ (o >> 1)) & 1;
          if (t == -1) t = parity;
          pure = pure && parity == t;
        }
        if (impossible == 0) continue;
        if (!pure || impossible != 2) {
          throw std::invalid_argument(
              "family_support_to_gf2: holes do not form a parity class");
        }
        Gf2System& branch = gamma == 0 ? out.first : out.second;
        add_equation(branch, {a0 + i, b0 + j}, static_cast<uint8_t>(1 ^ t));
      }
    }
  }
  return out;
}

FamilyReport family_report(int N) {
  FamilyReport report;
  report.instance = family_instance(N);
  EmpiricalModel model = build_model(report.instance.state,
                                     report.instance.scenario);
  Support born = support_of(model);
  Support exact = exact_family_support(N);
  report.supports_match = born.possible == exact.possible;
  report.search = find_consistent_assignment(born);
  report.gf2_unsat_c0 = gf2_unsatisfiable(family_gf2_system(N, 0));
  report.gf2_unsat_c1 = gf2_unsatisfiable(family_gf2_system(N, 1));
  auto derived = family_support_to_gf2(born, N);
  report.derived_matches_fixed =
      gf2_equivalent_rows(derived.first, family_gf2_system(N, 0)) &&
      gf2_equivalent_rows(derived.second, family_gf2_system(N, 1));
  report.entropy_bits = entropy_at(report.instance.lambda_N);
  return report;
}

// ---------------------------------------------------------------------------
// Entropy along the lambda line

double entropy_at(double lambda) {
  StateVector psi = balanced({0.0, 0.0, lambda}, 0.0);
  return vn_entropy_bits(partial_trace(psi, {2}));
}

std::vector<EntropyPoint> entropy_curve(int samples) {
  if (samples < 2) {
    throw std::invalid_argument("entropy_curve: need at least 2 samples");
  }
  std::vector<EntropyPoint> curve;
  curve.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    double lambda = (kPi / 2.0) * i / (samples - 1);
    curve.push_back({lambda, entropy_at(lambda)});
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Balanced-only vanishing

EquatorialCheckReport unbalanced_equatorial_check(
    double delta, const std::vector<double>& lambdas, double phi_phase,
    const std::vector<double>& phis) {
  StateVector psi = ghz_slocc(delta, lambdas, phi_phase);
  const int n = static_cast<int>(lambdas.size());
  Scenario grid(std::vector<std::vector<LocalMeasurement>>(
      n, equatorial_axis(phis)));
  EmpiricalModel model = build_model(psi, grid);

  EquatorialCheckReport report;
  const double cd = std::cos(delta);
  const double sd = std::sin(delta);
  const std::vector<Context> ctxs = grid.contexts();
  report.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    for (std::size_t o = 0; o < grid.n_outcomes(); ++o) {
      ++report.events_checked;
      double p = model.table[c][o];
      if (p < report.min_probability) report.min_probability = p;
      if (p <= kSupportEps) ++report.violations;

      // Modulus-dominance margin for this event's reduced measurements.
      JointOutcome jo = grid.outcome_from_index(o);
      double pv = cd, pw = sd;
      for (int s = 0; s < n; ++s) {
        PlusEvent ev = reduce_to_plus(grid.measurement(s, ctxs[c][s]), jo[s]);
        auto [mv, mw] = overlap_moduli(ev.measurement, lambdas[s]);
        pv *= mv;
        pw *= mw;
      }
      double gap = pv - pw;
      if (gap < report.min_gap) report.min_gap = gap;
    }
  }
  return report;
}

}  // namespace contexture
