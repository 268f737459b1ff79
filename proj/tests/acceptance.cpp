// Acceptance checks for the toolkit: thirteen independent criteria, one
// [PASS]/[FAIL] line each, exit code = number of failures.  Every tolerance
// is pinned inline next to the check it guards.  All randomness is seeded,
// so a run is reproducible bit for bit.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "contexture/constructions.hpp"
#include "contexture/contextuality.hpp"
#include "contexture/empirical.hpp"
#include "contexture/linalg.hpp"
#include "contexture/lp.hpp"
#include "contexture/rng.hpp"
#include "contexture/scenario.hpp"
#include "contexture/states.hpp"

using namespace contexture;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string strf(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return std::string(buf);
}

// Failure collector for one criterion.
struct Detail {
  bool ok = true;
  std::vector<std::string> lines;
  void require(bool cond, std::string line) {
    if (!cond) {
      ok = false;
      lines.push_back(std::move(line));
    }
  }
};

Scenario random_scenario(SplitMix64& rng, int n_sites, int max_per_site) {
  std::vector<std::vector<LocalMeasurement>> sites(n_sites);
  for (auto& axis : sites) {
    int count = 1 + static_cast<int>(rng.below(max_per_site));
    for (int i = 0; i < count; ++i) {
      axis.emplace_back(rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi));
    }
  }
  return Scenario(std::move(sites));
}

// ---------------------------------------------------------------------------
// 1. Family certificates: search and parity agree, all four sizes, < 10 s.

bool criterion_family(Detail& d) {
  auto t0 = std::chrono::steady_clock::now();
  for (int N : {2, 4, 6, 8}) {
    FamilyReport r = family_report(N);
    bool by_search = !r.search.exists;
    bool by_parity = r.gf2_unsat_c0 && r.gf2_unsat_c1;
    d.require(r.supports_match,
              strf("N=%d: Born support differs from the closed form", N));
    d.require(by_search, strf("N=%d: search found a global assignment", N));
    d.require(by_parity, strf("N=%d: a parity branch is satisfiable", N));
    d.require(by_search == by_parity,
              strf("N=%d: search and parity verdicts disagree", N));
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();
  d.require(secs < 10.0, strf("runtime %.2f s exceeds the 10 s budget", secs));
  return d.ok;
}

// ---------------------------------------------------------------------------
// 2. Parity-system fidelity: derived == closed form (N = 2, 4, 6); flipping
//    any single right-hand side makes the N <= 4 systems satisfiable, by
//    exhaustive enumeration of all assignments.

bool gf2_satisfiable_by_enumeration(const Gf2System& sys) {
  std::vector<std::uint32_t> masks;
  masks.reserve(sys.rows.size());
  for (const auto& row : sys.rows) {
    std::uint32_t mask = 0;
    for (int v = 0; v < sys.num_vars; ++v) {
      if (row[v]) mask |= 1u << v;
    }
    masks.push_back(mask);
  }
  for (std::uint32_t assign = 0; assign < (1u << sys.num_vars); ++assign) {
    bool all = true;
    for (std::size_t r = 0; r < masks.size(); ++r) {
      if ((std::popcount(masks[r] & assign) & 1) != sys.rhs[r]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool criterion_gf2_fidelity(Detail& d) {
  for (int N : {2, 4, 6}) {
    FamilyInstance inst = family_instance(N);
    Support sup = support_of(build_model(inst.state, inst.scenario));
    auto [d0, d1] = family_support_to_gf2(sup, N);
    d.require(gf2_equivalent_rows(d0, family_gf2_system(N, 0)),
              strf("N=%d: derived c=0 system differs from closed form", N));
    d.require(gf2_equivalent_rows(d1, family_gf2_system(N, 1)),
              strf("N=%d: derived c=1 system differs from closed form", N));
  }
  for (int N : {2, 4}) {
    for (int branch : {0, 1}) {
      Gf2System sys = family_gf2_system(N, branch);
      d.require(!gf2_satisfiable_by_enumeration(sys),
                strf("N=%d branch %d: satisfiable before any flip", N, branch));
      for (std::size_t r = 0; r < sys.rhs.size(); ++r) {
        Gf2System flipped = sys;
        flipped.rhs[r] ^= 1;
        d.require(gf2_satisfiable_by_enumeration(flipped),
                  strf("N=%d branch %d: row %zu flip stays unsatisfiable", N,
                       branch, r));
      }
    }
  }
  return d.ok;
}

// ---------------------------------------------------------------------------
// 3. Contextual fraction: family = 1, product = 0, Bell-optimal model equals
//    the exact rational vertex oracle (expected sqrt(2) - 1); the strong
//    verdict coincides with CF = 1 on every model tested here.

bool criterion_fraction(Detail& d) {
  const LocalMeasurement X(kPi / 2.0, 0.0), Y(kPi / 2.0, kPi / 2.0);

  FamilyInstance f2 = family_instance(2);
  EmpiricalModel family_model = build_model(f2.state, f2.scenario);
  FractionResult family_fr = contextual_fraction(family_model);
  d.require(family_fr.status == LpStatus::optimal, "family LP not optimal");
  d.require(std::abs(family_fr.cf - 1.0) < 1e-6,
            strf("family cf = %.12g, expected 1", family_fr.cf));

  EmpiricalModel product_model = build_model(bipartite(0.0),
                                             Scenario({{X, Y}, {X, Y}}));
  FractionResult product_fr = contextual_fraction(product_model);
  d.require(std::abs(product_fr.cf) < 1e-9,
            strf("product cf = %.12g, expected 0", product_fr.cf));

  Scenario chsh({{X, Y},
                 {LocalMeasurement(kPi / 2.0, kPi / 4.0),
                  LocalMeasurement(kPi / 2.0, -kPi / 4.0)}});
  EmpiricalModel bell = build_model(bipartite(kPi / 4.0), chsh);
  FractionResult bell_fr = contextual_fraction(bell);

  // Independent oracle: the noncontextual weight is an LP over the 16
  // deterministic global assignments (bits: site 0 measurement 0/1, site 1
  // measurement 0/1; set bit = outcome -1), one <= row per (context,
  // outcome).  Solved exactly over rationals by vertex enumeration.
  LinearProgram lp;
  lp.c.assign(16, 1.0);
  std::vector<Context> ctxs = chsh.contexts();
  for (std::size_t cidx = 0; cidx < ctxs.size(); ++cidx) {
    for (int o = 0; o < chsh.n_outcomes(); ++o) {
      JointOutcome out = chsh.outcome_from_index(o);
      std::vector<double> row(16, 0.0);
      for (int g = 0; g < 16; ++g) {
        int o0 = (g >> ctxs[cidx][0]) & 1 ? -1 : +1;
        int o1 = (g >> (2 + ctxs[cidx][1])) & 1 ? -1 : +1;
        if (o0 == out[0] && o1 == out[1]) row[g] = 1.0;
      }
      lp.A.push_back(std::move(row));
      lp.b.push_back(bell.table[cidx][o]);
    }
  }
  double cf_oracle = 1.0 - brute_force_vertex_opt(lp);
  d.require(std::abs(bell_fr.cf - cf_oracle) < 1e-6,
            strf("Bell cf = %.12g but oracle says %.12g", bell_fr.cf,
                 cf_oracle));
  const double expected = std::sqrt(2.0) - 1.0;
  d.require(std::abs(bell_fr.cf - expected) < 1e-6,
            strf("Bell cf = %.12g, expected sqrt(2)-1 = %.12g", bell_fr.cf,
                 expected));

  // Strong contextuality <=> CF = 1, on every model above plus a GHZ one.
  EmpiricalModel ghz_xy = build_model(ghz_state(3),
                                      Scenario({{X, Y}, {X, Y}, {X, Y}}));
  const struct {
    const char* name;
    const EmpiricalModel* model;
    double cf;
  } rows[] = {
      {"family N=2", &family_model, family_fr.cf},
      {"product", &product_model, product_fr.cf},
      {"Bell-optimal", &bell, bell_fr.cf},
      {"GHZ X/Y", &ghz_xy, contextual_fraction(ghz_xy).cf},
  };
  for (const auto& row : rows) {
    bool strong = !find_consistent_assignment(support_of(*row.model)).exists;
    bool cf_one = std::abs(row.cf - 1.0) < 1e-6;
    d.require(strong == cf_one,
              strf("%s: strong=%d but cf=%.12g", row.name, strong, row.cf));
  }
  return d.ok;
}

// ---------------------------------------------------------------------------
// 4. Two-qubit rules: global assignments exist on random scenarios, and the
//    explicit rule picks a possible outcome everywhere on a 12x12 sphere
//    grid (poles included) at three interpolation angles.

bool criterion_bipartite(Detail& d) {
  SplitMix64 rng(41);
  std::vector<LocalMeasurement> axis = sphere_axis(12, 12);
  Scenario grid({axis, axis});
  for (double delta : {kPi / 16.0, kPi / 8.0, kPi / 4.0}) {
    StateVector psi = bipartite(delta);
    for (int rep = 0; rep < 100; ++rep) {
      Scenario sc = random_scenario(rng, 2, 5);
      SearchResult res = find_consistent_assignment(
          support_of(build_model(psi, sc)));
      d.require(res.exists,
                strf("delta=%.4f rep %d: no global assignment", delta, rep));
    }
    VerificationReport vr = verify_assignment(psi, assignment_bipartite(),
                                              grid);
    d.require(vr.contexts_checked ==
                  static_cast<std::uint64_t>(grid.n_contexts()),
              "grid not fully checked");
    d.require(vr.violations.empty(),
              strf("delta=%.4f: %zu impossible selections (min p %.3g)", delta,
                   vr.violations.size(), vr.min_probability));
  }
  return d.ok;
}

// ---------------------------------------------------------------------------
// 5. W-class rules: same shape as criterion 4, 50 random coefficient tuples,
//    8x8 sphere grid per state.

bool criterion_w_class(Detail& d) {
  SplitMix64 rng(52);
  std::vector<LocalMeasurement> axis = sphere_axis(8, 8);
  Scenario grid({axis, axis, axis});
  for (int rep = 0; rep < 50; ++rep) {
    double u[4];
    for (double& x : u) x = rng.uniform(0.02, 1.0);
    if (rep % 5 == 0) u[3] = 0.0;  // include states with no |000> component
    double s = u[0] + u[1] + u[2] + u[3];
    StateVector psi = w_class(u[0] / s, u[1] / s, u[2] / s, u[3] / s);

    Scenario sc = random_scenario(rng, 3, 5);
    SearchResult res = find_consistent_assignment(
        support_of(build_model(psi, sc)));
    d.require(res.exists, strf("rep %d: no global assignment", rep));

    VerificationReport vr = verify_assignment(psi, assignment_w(), grid);
    d.require(vr.violations.empty(),
              strf("rep %d: %zu impossible selections (min p %.3g)", rep,
                   vr.violations.size(), vr.min_probability));
  }
  return d.ok;
}

// ---------------------------------------------------------------------------
// 6. Polar rule on GHZ: violations exist and sit exactly on all-equatorial
//    contexts, for 3 and 4 qubits, on a grid that includes the equator.

bool criterion_polar_rule(Detail& d) {
  std::vector<double> thetas{0.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0, kPi};
  std::vector<double> phis{0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0};
  for (int n : {3, 4}) {
    Scenario grid = grid_product(n, thetas, phis);
    VerificationReport r = verify_assignment(
        ghz_state(n), replicate(assignment_north(), n), grid);
    // Azimuths are quarter turns, so cancellation needs the quarter counts
    // to sum to 2 mod 4: exactly a quarter of the 4^n equatorial contexts.
    std::size_t expected = (n == 3) ? 16 : 64;
    d.require(r.violations.size() == expected,
              strf("n=%d: %zu violations, expected %zu", n,
                   r.violations.size(), expected));
    for (const Violation& v : r.violations) {
      for (int site = 0; site < n; ++site) {
        double theta = grid.measurement(site, v.context[site]).theta;
        d.require(std::abs(theta - kPi / 2.0) < 1e-12,
                  strf("n=%d: violation off the equator (theta=%.6f)", n,
                       theta));
      }
    }
  }
  return d.ok;
}

// ---------------------------------------------------------------------------
// 7. Equatorial zeros require the balanced superposition: 20 sampled
//    unbalanced states have none; the balanced control has them.

bool criterion_balance(Detail& d) {
  SplitMix64 rng(7);
  std::vector<double> phis{0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0};
  for (int rep = 0; rep < 20; ++rep) {
    double delta = rng.uniform(kPi / 16.0, kPi / 4.0 - 0.1);
    std::vector<double> ls{rng.uniform(0.0, kPi / 3.0),
                           rng.uniform(0.0, kPi / 3.0),
                           rng.uniform(0.0, kPi / 3.0)};
    double phase = rng.uniform(0.0, 2.0 * kPi);
    EquatorialCheckReport r =
        unbalanced_equatorial_check(delta, ls, phase, phis);
    d.require(r.violations == 0,
              strf("rep %d (delta=%.4f): %llu zero events", rep, delta,
                   static_cast<unsigned long long>(r.violations)));
    d.require(r.min_gap > 0.0, strf("rep %d: dominance margin not positive",
                                    rep));
  }
  EquatorialCheckReport control =
      unbalanced_equatorial_check(kPi / 4.0, {0.0, 0.0, 0.0}, 0.0, phis);
  d.require(control.violations >= 1, "balanced control shows no zero event");
  // The canonical cancelling context: GHZ measured at azimuths 0, pi/2,
  // pi/2 has a vanishing +++ amplitude.
  Scenario xyy({{LocalMeasurement(kPi / 2.0, 0.0)},
                {LocalMeasurement(kPi / 2.0, kPi / 2.0)},
                {LocalMeasurement(kPi / 2.0, kPi / 2.0)}});
  Complex amp = amplitude(ghz_state(3), xyy, {0, 0, 0}, {+1, +1, +1});
  d.require(std::abs(amp) < 1e-14,
            strf("GHZ X,Y,Y amplitude %.3g, expected 0", std::abs(amp)));
  return d.ok;
}

// ---------------------------------------------------------------------------
// 8. Equatorial rule: for 20 sampled angle triples with sum > pi/2, the
//    refined rule is violation-free on 16^3 equatorial grids and the
//    response sum stays strictly inside (-pi, pi).

bool criterion_equatorial_rule(Detail& d) {
  SplitMix64 rng(8);
  std::vector<double> az;
  for (int j = 0; j < 16; ++j) az.push_back(2.0 * kPi * j / 16.0);
  std::vector<LocalMeasurement> axis = equatorial_axis(az);
  Scenario grid({axis, axis, axis});
  std::vector<Context> ctxs = grid.contexts();
  SiteAssignment rule = assignment_equatorial();

  for (int rep = 0; rep < 20; ++rep) {
    double ls[3];
    do {
      for (double& l : ls) l = rng.uniform(0.15, 1.45);
    } while (ls[0] + ls[1] + ls[2] <= kPi / 2.0 + 0.05);

    StateVector psi = balanced({ls[0], ls[1], ls[2]}, 0.0);
    VerificationReport vr = verify_assignment(psi, replicate(rule, 3), grid);
    d.require(vr.violations.empty(),
              strf("rep %d: %zu impossible selections", rep,
                   vr.violations.size()));

    // Response-sum bound at every grid point: |sum beta| <= 3pi/2 - sum(l),
    // which is < pi because the angles sum past pi/2.
    double worst = 0.0;
    for (const Context& ctx : ctxs) {
      double sum = 0.0;
      for (int site = 0; site < 3; ++site) {
        const LocalMeasurement& m = grid.measurement(site, ctx[site]);
        LocalMeasurement sel = rule(m) == +1 ? m : negate(m);
        sum += beta(ls[site], std::remainder(sel.phi, 2.0 * kPi));
      }
      worst = std::max(worst, std::abs(sum));
    }
    double cap = 3.0 * kPi / 2.0 - (ls[0] + ls[1] + ls[2]);
    d.require(worst <= cap + 1e-9,
              strf("rep %d: |sum beta| = %.12g exceeds %.12g", rep, worst,
                   cap));
    d.require(worst < kPi,
              strf("rep %d: |sum beta| = %.12g reaches pi", rep, worst));
  }
  return d.ok;
}

// ---------------------------------------------------------------------------
// 9. The vanishing condition is equivalent to a vanishing Born probability:
//    10^4 random samples plus 10^2 constructed zeros, no disagreements.

double invert_beta(double lambda, double target) {
  // beta(lambda, .) is strictly increasing and within pi of its argument,
  // so [target - 2pi, target + 2pi] brackets the preimage.
  double lo = target - 2.0 * kPi, hi = target + 2.0 * kPi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    double mid = 0.5 * (lo + hi);
    (beta(lambda, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double equatorial_plus_probability(const std::array<double, 3>& ls,
                                   double phase,
                                   const std::array<double, 3>& phis) {
  StateVector psi = balanced({ls[0], ls[1], ls[2]}, phase);
  Scenario sc({{LocalMeasurement(kPi / 2.0, phis[0])},
               {LocalMeasurement(kPi / 2.0, phis[1])},
               {LocalMeasurement(kPi / 2.0, phis[2])}});
  return std::norm(amplitude(psi, sc, {0, 0, 0}, {+1, +1, +1}));
}

bool criterion_vanishing(Detail& d) {
  SplitMix64 rng(9);
  int disagreements = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    std::array<double, 3> ls{rng.uniform(0.0, 1.2), rng.uniform(0.0, 1.2),
                             rng.uniform(0.0, 1.2)};
    double phase = rng.uniform(0.0, 2.0 * kPi);
    std::array<double, 3> phis{rng.uniform(0.0, 2.0 * kPi),
                               rng.uniform(0.0, 2.0 * kPi),
                               rng.uniform(0.0, 2.0 * kPi)};
    double p = equatorial_plus_probability(ls, phase, phis);
    VanishingCheck chk = vanishing_condition(ls, phase, phis);
    if (chk.vanishes != (p < 1e-10)) ++disagreements;
  }
  d.require(disagreements == 0,
            strf("%d random-sample disagreements", disagreements));

  int constructed_bad = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::array<double, 3> ls{rng.uniform(0.1, 1.2), rng.uniform(0.1, 1.2),
                             rng.uniform(0.1, 1.2)};
    double phase = rng.uniform(0.0, 2.0 * kPi);
    std::array<double, 3> phis{rng.uniform(0.0, 2.0 * kPi),
                               rng.uniform(0.0, 2.0 * kPi), 0.0};
    // Choose the third azimuth so the response sum lands exactly on the
    // cancellation manifold.
    double target = kPi + phase - beta(ls[0], phis[0]) - beta(ls[1], phis[1]);
    phis[2] = invert_beta(ls[2], target);
    double p = equatorial_plus_probability(ls, phase, phis);
    VanishingCheck chk = vanishing_condition(ls, phase, phis);
    if (!chk.vanishes || p >= 1e-10) ++constructed_bad;
  }
  d.require(constructed_bad == 0,
            strf("%d constructed zeros failed", constructed_bad));
  return d.ok;
}

// ---------------------------------------------------------------------------
// 10. Response-function calculus: identity at lambda = 0, pinned values at
//     the family angles, and the closed-form derivative against centered
//     finite differences on a 50x50 grid.

bool criterion_beta(Detail& d) {
  SplitMix64 rng(10);
  for (int rep = 0; rep < 200; ++rep) {
    double phi = rng.uniform(0.0, 2.0 * kPi);
    d.require(std::abs(beta(0.0, phi) - phi) < 1e-12,
              strf("beta(0, %.6f) != phi", phi));
  }
  for (int N : {2, 4, 8}) {
    double l = kPi / 2.0 - kPi / N;
    d.require(std::abs(beta(l, 0.0)) < 1e-12,
              strf("N=%d: beta(l, 0) != 0", N));
    d.require(std::abs(beta(l, kPi) - kPi) < 1e-12,
              strf("N=%d: beta(l, pi) != pi", N));
    // At the quarter turns the response is +-pi/N (mod 2pi).
    d.require(std::abs(beta(l, kPi / 2.0) - kPi / N) < 1e-12,
              strf("N=%d: beta(l, pi/2) != pi/N", N));
    d.require(std::abs(beta(l, 3.0 * kPi / 2.0) - (3.0 * kPi / 2.0 + l)) <
                  1e-12,
              strf("N=%d: beta(l, 3pi/2) != 3pi/2 + l", N));
  }
  double max_err = 0.0;
  const double h = 1e-5;
  for (int i = 0; i < 50; ++i) {
    double lambda = 1.3 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      double phi = 2.0 * kPi * j / 50.0;
      double fd = (beta(lambda, phi + h) - beta(lambda, phi - h)) / (2.0 * h);
      max_err = std::max(max_err,
                         std::abs(fd - beta_derivative(lambda, phi)));
    }
  }
  d.require(max_err < 1e-6,
            strf("max derivative error %.3g over the grid", max_err));
  return d.ok;
}

// ---------------------------------------------------------------------------
// 11. Entropy curve: exactly 1 bit at lambda = 0, strictly decreasing, and
//     equal to the closed form h((1 + sin lambda) / 2) everywhere.

double binary_entropy_bits(double p) {
  double out = 0.0;
  if (p > 0.0) out -= p * std::log2(p);
  if (p < 1.0) out -= (1.0 - p) * std::log2(1.0 - p);
  return out;
}

bool criterion_entropy(Detail& d) {
  std::vector<EntropyPoint> curve = entropy_curve(100);
  d.require(curve.size() == 100, "unexpected sample count");
  d.require(std::abs(curve.front().entropy_bits - 1.0) < 1e-12,
            strf("S(0) = %.15g, expected 1", curve.front().entropy_bits));
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i > 0) {
      d.require(curve[i].entropy_bits < curve[i - 1].entropy_bits,
                strf("not strictly decreasing at sample %zu", i));
    }
    double closed = binary_entropy_bits(
        (1.0 + std::sin(curve[i].lambda)) / 2.0);
    d.require(std::abs(curve[i].entropy_bits - closed) < 1e-9,
              strf("sample %zu: pipeline %.12g vs closed form %.12g", i,
                   curve[i].entropy_bits, closed));
  }
  return d.ok;
}

// ---------------------------------------------------------------------------
// 12. Physics sanity: every generated model is no-signalling, and its Born
//     probabilities match an independent dense contraction oracle.

double born_oracle(const StateVector& psi, const Scenario& sc,
                   const Context& ctx, const JointOutcome& out) {
  // Dense contraction over the full basis, recomputing each eigenstate
  // component from the raw angles (for outcome -1, from the antipode).
  int n = sc.n_sites();
  std::complex<double> amp = 0.0;
  for (std::size_t x = 0; x < psi.dim(); ++x) {
    std::complex<double> w = 1.0;
    for (int site = 0; site < n; ++site) {
      const LocalMeasurement& m = sc.measurement(site, ctx[site]);
      double theta = m.theta, phi = m.phi;
      if (out[site] == -1) {
        theta = kPi - theta;
        phi = phi + kPi;
      }
      int bit = static_cast<int>(x >> (n - 1 - site)) & 1;
      std::complex<double> comp =
          bit == 0 ? std::complex<double>(std::cos(theta / 2.0), 0.0)
                   : std::polar(std::sin(theta / 2.0), phi);
      w *= std::conj(comp);
    }
    amp += w * psi[x];
  }
  return std::norm(amp);
}

bool criterion_sanity(Detail& d) {
  const LocalMeasurement X(kPi / 2.0, 0.0), Y(kPi / 2.0, kPi / 2.0),
      Z(0.0, 0.0);
  std::vector<std::pair<StateVector, EmpiricalModel>> registry;
  auto add = [&](const StateVector& psi, const Scenario& sc) {
    registry.emplace_back(psi, build_model(psi, sc));
  };
  add(ghz_state(3), Scenario({{X, Y}, {X, Y}, {X, Y}}));
  add(ghz_state(4), Scenario({{X, Y}, {X, Y}, {X, Y}, {X, Y}}));
  add(bipartite(kPi / 4.0),
      Scenario({{X, Y},
                {LocalMeasurement(kPi / 2.0, kPi / 4.0),
                 LocalMeasurement(kPi / 2.0, -kPi / 4.0)}}));
  std::vector<LocalMeasurement> small = sphere_axis(3, 4);
  add(bipartite(kPi / 8.0), Scenario({small, small}));
  std::vector<LocalMeasurement> tiny = sphere_axis(3, 2);
  add(w_class(0.2, 0.3, 0.4, 0.1), Scenario({tiny, tiny, tiny}));
  add(w_state(), Scenario({{X, Y, Z}, {X, Y, Z}, {X, Y, Z}}));
  FamilyInstance f2 = family_instance(2);
  add(f2.state, f2.scenario);
  FamilyInstance f4 = family_instance(4);
  add(f4.state, f4.scenario);
  std::vector<LocalMeasurement> eq = equatorial_axis({0.0, kPi / 2.0, kPi});
  add(balanced({0.3, 0.5, 0.7}, 1.1), Scenario({eq, eq, eq}));
  add(ghz_slocc(kPi / 8.0, {0.4, 0.9}, 2.0), Scenario({{X, Y, Z}, {X, Y, Z}}));

  for (std::size_t i = 0; i < registry.size(); ++i) {
    NoSignallingReport ns = no_signalling_check(registry[i].second);
    d.require(ns.ok && ns.worst_violation < 1e-9,
              strf("model %zu: no-signalling violation %.3g", i,
                   ns.worst_violation));
  }

  SplitMix64 rng(12);
  double worst = 0.0;
  int bad = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto& [psi, model] = registry[rng.below(registry.size())];
    const Scenario& sc = model.scenario;
    std::vector<Context> ctxs = sc.contexts();
    std::size_t c = rng.below(ctxs.size());
    int o = static_cast<int>(rng.below(sc.n_outcomes()));
    double p_model = model.table[c][o];
    double p_oracle = born_oracle(psi, sc, ctxs[c], sc.outcome_from_index(o));
    worst = std::max(worst, std::abs(p_model - p_oracle));
    if (std::abs(p_model - p_oracle) >= 1e-12) ++bad;
  }
  d.require(bad == 0, strf("%d of 1000 probabilities drift past 1e-12 "
                           "(worst %.3g)", bad, worst));
  return d.ok;
}

// ---------------------------------------------------------------------------
// 13. Strict modulus dominance for measurements strictly above the equator,
//     10^4 in-range samples.

bool criterion_dominance(Detail& d) {
  SplitMix64 rng(13);
  int failures = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    double theta = rng.uniform(0.0, kPi / 2.0 - 1e-6);
    double lambda = rng.uniform(0.0, kPi / 2.0 - 1e-6);
    double phi = rng.uniform(0.0, 2.0 * kPi);
    auto [v, w] = overlap_moduli(LocalMeasurement(theta, phi), lambda);
    if (!(v > w)) ++failures;
  }
  d.require(failures == 0, strf("%d samples without strict dominance",
                                failures));
  return d.ok;
}

}  // namespace

int main() {
  // Exercise the threaded model builder deterministically unless the
  // environment already chose a thread count.
  setenv("CONTEXTURE_THREADS", "4", 0);

  struct Item {
    const char* what;
    bool (*run)(Detail&);
  };
  const Item items[] = {
      {"family strongly contextual by search and parity, N in {2,4,6,8}",
       criterion_family},
      {"parity systems match closed form; single flips restore satisfiability",
       criterion_gf2_fidelity},
      {"contextual fraction: family 1, product 0, Bell matches exact oracle",
       criterion_fraction},
      {"two-qubit rule consistent on sphere grids; searches always succeed",
       criterion_bipartite},
      {"W-class rule consistent on sphere grids; searches always succeed",
       criterion_w_class},
      {"polar-rule violations confined to all-equatorial contexts",
       criterion_polar_rule},
      {"equatorial zeros only at the balanced point",
       criterion_balance},
      {"equatorial rule holds when angles sum past pi/2; response bound < pi",
       criterion_equatorial_rule},
      {"vanishing condition equivalent to zero Born probability",
       criterion_vanishing},
      {"response-function identities and derivative",
       criterion_beta},
      {"entropy curve: endpoint, monotonicity, closed form",
       criterion_entropy},
      {"no-signalling and independent Born oracle on all generated models",
       criterion_sanity},
      {"strict modulus dominance off the equator",
       criterion_dominance},
  };

  int failed = 0;
  int id = 0;
  for (const Item& item : items) {
    ++id;
    Detail detail;
    bool ok = false;
    try {
      ok = item.run(detail);
    } catch (const std::exception& e) {
      detail.require(false, strf("exception: %s", e.what()));
    }
    std::printf("[%s] %2d. %s\n", ok ? "PASS" : "FAIL", id, item.what);
    for (const std::string& line : detail.lines) {
      std::printf("        - %s\n", line.c_str());
    }
    if (!ok) ++failed;
  }
  if (failed == 0) {
    std::printf("all %d criteria passed\n", id);
  } else {
    std::printf("%d of %d criteria FAILED\n", failed, id);
  }
  return failed;
}
