#pragma once

// The concrete constructions the library exists to reproduce:
//
//   - closed-form deterministic outcome rules for every local measurement
//     on bipartite GHZ-class, W-class, and n-qubit GHZ states, together
//     with verification that they never hit a zero-probability event;
//   - the azimuth response function beta(lambda, phi) of the v/w overlap
//     factors, its derivative, and the equatorial vanishing condition for
//     balanced three-qubit states;
//   - for every even N, a finite equatorial measurement family on a
//     balanced state whose support is strongly contextual, plus the GF(2)
//     systems that certify it by a parity argument;
//   - the entanglement-entropy curve along the lambda parameter line.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "contexture/contextuality.hpp"
#include "contexture/empirical.hpp"
#include "contexture/scenario.hpp"
#include "contexture/states.hpp"

namespace contexture {

// ---------------------------------------------------------------------------
// Deterministic assignments

// Outcome rule for one site: any local measurement -> +1 or -1.
using SiteAssignment = std::function<Outcome(const LocalMeasurement&)>;

// One rule per site.
struct AssignmentFn {
  std::vector<SiteAssignment> sites;
};

// Rules for the two-qubit GHZ-class states ghz_slocc(delta, {l1, l2}, 0)
// (any delta in (0, pi/4], lambdas in (0, pi/2]): site 0 uses a rule
// favouring the northern hemisphere with a half-open azimuth split, site 1
// the mirrored split, arranged so the pair never selects an orthogonal
// joint eigenstate.
AssignmentFn assignment_bipartite();

// Rules for every W-class state w_class(a, b, c, d): one shared rule h on
// two sites and a complementary rule on the third.
AssignmentFn assignment_w();

// Per-site rule for n-qubit GHZ states: the polar rule (+1 iff
// theta <= pi/2), the same at every site.  Consistent on every context
// containing at least one non-equatorial measurement.
SiteAssignment assignment_north();

// Polar rule refined on the equator by the azimuth split (+1 iff
// theta < pi/2, or theta = pi/2 and phi in (-pi/2, pi/2]).  For balanced
// states with lambda_1 + lambda_2 + lambda_3 > pi/2 this rule is consistent
// on every context, equatorial ones included.
SiteAssignment assignment_equatorial();

AssignmentFn replicate(const SiteAssignment& rule, int n_sites);

struct Violation {
  Context context;
  double probability;  // Born probability of the selected joint outcome
};

struct VerificationReport {
  std::uint64_t contexts_checked = 0;
  std::vector<Violation> violations;  // contexts whose selected outcome is
                                      // (numerically) impossible
  double min_probability = 1.0;       // smallest selected-outcome probability
};

// Evaluates the assignment on every context of the grid scenario and checks
// the selected joint outcome has nonzero Born probability (threshold 1e-14,
// far below any probability the rules can legally select).
VerificationReport verify_assignment(const StateVector& psi,
                                     const AssignmentFn& fn,
                                     const Scenario& grid);

// ---------------------------------------------------------------------------
// Measurement grids for verification

// theta values x phi values, same set at every site.
Scenario grid_product(int n_sites, const std::vector<double>& thetas,
                      const std::vector<double>& phis);

// Roughly uniform sphere sample: thetas equally spaced in (0, pi) plus both
// poles, phis equally spaced in [0, 2pi).
std::vector<LocalMeasurement> sphere_axis(int n_theta, int n_phi);

// Equatorial measurements (theta = pi/2) at the given azimuths.
std::vector<LocalMeasurement> equatorial_axis(const std::vector<double>& phis);

// ---------------------------------------------------------------------------
// Equatorial response and vanishing

// Azimuth of the overlap <theta=pi/2, phi | v_lambda> relative to phi:
// beta(lambda, phi) = phi + 2 Arg<phi|v_lambda>, the equatorial direction
// in which the w-branch must align for the joint amplitude to cancel.
// Domain: lambda in [0, pi/2) (at pi/2 the factors coincide and the
// response degenerates); phi arbitrary, result continuous in phi with
// beta(lambda, phi + 2pi) = beta(lambda, phi) + 2pi.
double beta(double lambda, double phi);

// d beta / d phi = cos(lambda) / (1 + cos(phi) sin(lambda)): positive for
// lambda < pi/2, so beta is strictly increasing in phi.
double beta_derivative(double lambda, double phi);

// For the balanced 3-qubit state balanced({l1,l2,l3}, Phi) and equatorial
// azimuths phi[i], the joint +++ amplitude vanishes iff
//   sum_i beta(l_i, phi_i) == pi + Phi  (mod 2pi).
// Returns the signed circular distance between the two sides (zero iff the
// amplitude vanishes) and the vanishing verdict at tolerance 1e-9.
struct VanishingCheck {
  double distance;  // in (-pi, pi]
  bool vanishes;
};
VanishingCheck vanishing_condition(const std::array<double, 3>& lambdas,
                                   double phi_phase,
                                   const std::array<double, 3>& phis);

// |<theta,phi | v_lambda>| > |<theta,phi | w_lambda>| for theta, lambda in
// [0, pi/2), strictly; the scalar fact behind the polar rule.  Returns the
// two moduli for the caller to compare.
std::pair<double, double> overlap_moduli(const LocalMeasurement& m,
                                         double lambda);

// ---------------------------------------------------------------------------
// Unsatisfiable equatorial families

// For even N >= 2: three equatorial sites on the balanced state
// balanced({0, 0, l}, 0) with l = pi/2 - pi/N.  Sites 0 and 1 carry the N
// azimuths {pi k / N : k = 0..N-1}; site 2 carries the two azimuths for
// k = 0 and k = m = N/2.
struct FamilyInstance {
  int N = 0;
  int m = 0;             // N / 2
  double lambda_N = 0.0; // pi/2 - pi/N
  StateVector state;
  Scenario scenario;
};
FamilyInstance family_instance(int N);

// Support of the family model predicted by the closed-form vanishing
// arithmetic (congruences mod 2N), bypassing the Born rule entirely.  Used
// to cross-check support_of(build_model(...)).
Support exact_family_support(int N);

// The two GF(2) systems (one per outcome bit of the k = m measurement at
// site 2) whose joint unsatisfiability certifies strong contextuality of
// the family by parity counting.  Variables: a_0..a_{N-1}, b_0..b_{N-1},
// c_0, c_m.
Gf2System family_gf2_system(int N, int c_m_value);

// Re-derives both systems from a support over the family scenario; equal to
// family_gf2_system(N, 0/1) when given the family's own support.  Each
// zero-probability event contributes one parity equation: full-parity-class
// holes at k = 0 bind a_i + b_j + c_0; holes at k = m slice by the c_m bit
// and bind a_i + b_j within the branch.
std::pair<Gf2System, Gf2System> family_support_to_gf2(const Support& support,
                                                      int N);

// Everything the family analysis establishes for one N, produced by the
// same code path the command-line `family` report uses: the Born-rule
// support against the closed-form one, the assignment search, and the GF(2)
// parity certificates.  strongly_contextual is the search verdict; the
// GF(2) branches must both be unsatisfiable and thereby agree with it.
struct FamilyReport {
  FamilyInstance instance;
  bool supports_match = false;   // Born-rule support == closed-form support
  SearchResult search;           // strongly contextual iff !search.exists
  bool gf2_unsat_c0 = false;     // c_m = 0 branch unsatisfiable
  bool gf2_unsat_c1 = false;     // c_m = 1 branch unsatisfiable
  bool derived_matches_fixed = false;  // support-derived == closed-form GF(2)
  double entropy_bits = 0.0;     // third-qubit entanglement entropy
};
FamilyReport family_report(int N);

// ---------------------------------------------------------------------------
// Entropy along the lambda line

// Entanglement entropy of the third qubit of balanced({0, 0, lambda}, 0)
// against the other two, as a function of lambda, sampled at `samples`
// points spanning [0, pi/2] inclusive.  The reduced state is
// (1/2) [[1, sin(lambda)], [sin(lambda), 1]], so the curve decreases
// strictly from 1 bit (lambda = 0) to 0 (lambda = pi/2, where the state is
// a product); the family instances sit on this curve at lambda_N.
struct EntropyPoint {
  double lambda;
  double entropy_bits;
};
std::vector<EntropyPoint> entropy_curve(int samples);

// Entropy at one lambda, via partial trace of the explicit state.
double entropy_at(double lambda);

// ---------------------------------------------------------------------------
// Balanced-only vanishing (why delta = pi/4 is forced)

// Scans the full equatorial grid (every site carrying every azimuth in
// `phis`) of ghz_slocc(delta, lambdas, phi_phase) for zero-probability
// events.  For delta strictly below pi/4 there are none: the v-branch
// modulus strictly dominates, so `violations` is 0 and `min_gap` — the
// smallest value of cos(delta) prod|<phi_i|v>| - sin(delta) prod|<phi_i|w>|
// over the grid — is strictly positive.  At delta = pi/4 cancellations can
// and do occur (the GHZ state at azimuths summing to pi, for instance).
struct EquatorialCheckReport {
  std::uint64_t events_checked = 0;
  std::uint64_t violations = 0;     // zero-probability events found
  double min_gap = 0.0;             // modulus-dominance margin over contexts
  double min_probability = 1.0;     // smallest event probability seen
};
EquatorialCheckReport unbalanced_equatorial_check(
    double delta, const std::vector<double>& lambdas, double phi_phase,
    const std::vector<double>& phis);

}  // namespace contexture
