#pragma once

// Small dense linear programming: a self-contained two-phase primal simplex
// over doubles (with dual values), and an exact rational brute-force vertex
// search used as an independent oracle on tiny instances.

#include <cstddef>
#include <vector>

namespace contexture {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

// maximize c.x  subject to  A x <= b,  x >= 0.
struct LinearProgram {
  std::vector<double> c;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  std::vector<double> x;
  // Dual values, one per constraint row, valid when status == optimal.
  // For a maximization with <= rows these are >= 0 and satisfy strong
  // duality: value == y.b, with A^T y >= c.
  std::vector<double> y;
};

// Two-phase dense simplex with Bland's rule (no cycling), pivot tolerance
// 1e-9, iteration cap 1e6.  Deterministic: ties resolve to the lowest index.
LpResult maximize(const LinearProgram& lp);

// Exact oracle: enumerates feasible bases of the standard-form LP with
// rational arithmetic (constructing each coefficient exactly from its
// double bits) and returns the best vertex value as a double rounded from
// the exact optimum.  Guards: at most 16 structural variables, 20 rows,
// b >= 0 (so the slack basis is feasible), and 2^20 explored bases — it
// exists to validate `maximize` on desk-scale instances, not to solve
// anything real.  Throws std::invalid_argument when a guard is violated and
// std::runtime_error if the LP is unbounded or the basis cap is hit
// (callers use it only on bounded instances).
double brute_force_vertex_opt(const LinearProgram& lp);

}  // namespace contexture
