#pragma once

// Deciding contextuality properties of an empirical model:
//   - strong contextuality, by backtracking search for a global assignment
//     whose restriction to every context stays inside the support;
//   - the contextual fraction, by linear programming (maximize the
//     noncontextual weight that fits under the table);
//   - GF(2) linear systems extracted from supports, and their
//     (un)satisfiability by Gaussian elimination.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contexture/empirical.hpp"
#include "contexture/lp.hpp"
#include "contexture/scenario.hpp"

namespace contexture {

// One outcome per (site, measurement) pair: assignment[s][i] is the outcome
// the global section gives measurement i at site s.
using GlobalAssignment = std::vector<std::vector<Outcome>>;

struct SearchResult {
  bool exists = false;
  std::optional<GlobalAssignment> witness;  // set iff exists
  std::uint64_t nodes_explored = 0;         // value trials, for scaling checks
};

// Looks for a global assignment consistent with the support: for every
// context, the induced joint outcome must be possible.  Depth-first over
// (site, measurement) variables in site-major order, trying +1 before -1,
// so the witness returned (when one exists) is lexicographically least in
// that encoding.  A context is checked as soon as its last variable is
// decided.  The model is strongly contextual iff exists == false.
SearchResult find_consistent_assignment(const Support& support);

// Events (context, joint outcome) in the support that extend to no global
// assignment.  Nonempty means logical contextuality; equal to the whole
// support means strong contextuality.
std::vector<std::pair<std::size_t, std::size_t>> logically_contextual_events(
    const Support& support);

struct FractionResult {
  double ncf = 0.0;  // noncontextual fraction: best weight lambda in [0, 1]
  double cf = 0.0;   // contextual fraction: 1 - ncf
  LpStatus status = LpStatus::optimal;
};

// Contextual fraction by LP: maximize sum of weights over global
// assignments, each assignment's induced subnormalized model bounded above
// by the empirical table.  Solved by column generation on the weights —
// columns are global assignments, priced by the dual values of the table
// rows — so scenarios whose full assignment count is astronomically large
// still solve when few assignments matter.  Deterministic.
FractionResult contextual_fraction(const EmpiricalModel& model);

// A linear system over GF(2): rows * x = rhs, dense 0/1 coefficients.
struct Gf2System {
  int num_vars = 0;
  std::vector<std::string> var_names;      // for reporting; size num_vars
  std::vector<std::vector<uint8_t>> rows;  // each of size num_vars
  std::vector<uint8_t> rhs;                // one bit per row
};

// Gaussian elimination over GF(2); true iff elimination produces 0 = 1.
bool gf2_unsatisfiable(const Gf2System& sys);

// All solutions by exhaustive enumeration (guard: num_vars <= 20); used as
// an independent check on the elimination verdict.
std::vector<std::vector<uint8_t>> gf2_solutions(const Gf2System& sys);

// Whether two systems contain the same multiset of equations (rows compared
// as variable sets plus right-hand side, order-insensitive).
bool gf2_equivalent_rows(const Gf2System& lhs, const Gf2System& rhs);

}  // namespace contexture
