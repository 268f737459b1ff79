#pragma once

// Named state families: GHZ- and W-class representatives with their
// invertible-local-operator (ILO) parameterizations, plus the balanced
// equatorial-zero states used by the unsatisfiable measurement families.
//
// Every constructor validates its parameter domain and returns a normalized
// StateVector.  ILO factors are exposed separately so tests can check that
// the parameterized states really are local transforms of the canonical
// representatives.

#include <vector>

#include "contexture/linalg.hpp"

namespace contexture {

// |GHZ(n)> = (|0...0> + |1...1>)/sqrt(2), n >= 2.
StateVector ghz_state(int n);

// Schmidt form of a two-qubit state: cos(delta)|00> + sin(delta)|11>,
// delta in [0, pi/4] (0 gives the product state |00>).  Every two-qubit
// state is equivalent to one of these under local unitaries.
StateVector bipartite(double delta);

// |W> = (|100> + |010> + |001>)/sqrt(3).
StateVector w_state();

// Three-qubit GHZ-class state in the canonical five-parameter form
//   sqrt(K) (cos(delta) |000> + sin(delta) e^{i Phi} |v_a v_b v_c>)
// with |v_x> = cos(x)|0> + sin(x)|1>, where (a, b, c) = (alpha, beta, gamma).
// Domain: delta in (0, pi/4], alpha, beta, gamma in (0, pi/2], Phi in
// [0, 2pi).  K is computed numerically from the amplitude norm.
StateVector ghz_canonical(double delta, double alpha, double beta,
                          double gamma, double phi_phase);

// The ILO (one 2x2 factor per site) that maps |GHZ(3)> onto
// ghz_canonical(delta, alpha, beta, gamma, phi_phase), up to normalization.
std::vector<LocalOperator> ilo_ghz_canonical(double delta, double alpha,
                                             double beta, double gamma,
                                             double phi_phase);

// Three-qubit W-class state sqrt(a)|100> + sqrt(b)|010> + sqrt(c)|001>
//   + sqrt(d)|000>, a,b,c > 0, d >= 0, a+b+c+d = 1 (within 1e-9).
StateVector w_class(double a, double b, double c, double d);

// ILO mapping |W> onto w_class(a, b, c, d), up to normalization.
std::vector<LocalOperator> ilo_w_class(double a, double b, double c, double d);

// n-qubit GHZ-class state in the pairwise-overlap form
//   sqrt(K) (cos(delta) |v_1 ... v_n> + sin(delta) e^{i Phi} |w_1 ... w_n>)
// with |v_l> = cos(l/2)|0> + sin(l/2)|1>, |w_l> = sin(l/2)|0> + cos(l/2)|1>
// for l = lambdas[i], so <v_l|w_l> = sin(l).  Domain: delta in (0, pi/4],
// lambdas[i] in [0, pi/2], Phi in [0, 2pi).  Normalization constant
// K = 1 / (1 + 2 cos(delta) sin(delta) cos(Phi) prod_i sin(lambdas[i]))
// is checked against the numeric norm.
StateVector ghz_slocc(double delta, const std::vector<double>& lambdas,
                      double phi_phase);

// Single-qubit factors |v_lambda> and |w_lambda> of the overlap form.
StateVector v_factor(double lambda);
StateVector w_factor(double lambda);

// The "balanced" special case delta = pi/4 of ghz_slocc, the unique-weight
// member of its class whose equatorial correlations can vanish.
StateVector balanced(const std::vector<double>& lambdas, double phi_phase);

}  // namespace contexture
