#pragma once

// Empirical models: the full table of joint-outcome probabilities a state
// assigns to every context of a scenario, plus possibilistic supports and
// the no-signalling cross-check.

#include <cstdint>
#include <vector>

#include "contexture/linalg.hpp"
#include "contexture/scenario.hpp"

namespace contexture {

// Probability threshold separating "in the support" from numerical noise.
// Born probabilities of the states built here are either exactly 0 or
// bounded well away from 0, so any value in (1e-10, 1e-14) would do.
inline constexpr double kSupportEps = 1e-10;

struct EmpiricalModel {
  Scenario scenario;
  // table[c][o]: probability of joint outcome o (Scenario::outcome_index
  // encoding) in the c-th context of Scenario::contexts().
  std::vector<std::vector<double>> table;
};

// <m_1 o_1, ..., m_n o_n | psi>: overlap of the joint eigenstate selected by
// the context and outcome with the state.
Complex amplitude(const StateVector& psi, const Scenario& sc,
                  const Context& ctx, const JointOutcome& outcome);

// Born-rule table over every context.  Honours the CONTEXTURE_THREADS
// environment variable (default 1) by splitting contexts across threads;
// each context's row is written to its own slot, so the result is
// deterministic regardless of thread count.
EmpiricalModel build_model(const StateVector& psi, const Scenario& sc);

struct Support {
  Scenario scenario;
  // possible[c][o]: whether outcome o has probability > eps in context c.
  std::vector<std::vector<bool>> possible;
};

Support support_of(const EmpiricalModel& model, double eps = kSupportEps);

struct NoSignallingReport {
  bool ok = true;
  double worst_violation = 0.0;  // max |marginal difference| over all checks
};

// Checks that marginals on every proper subset of sites agree across all
// contexts extending them.  Quantum tables satisfy this up to roundoff;
// `tol` bounds the accepted discrepancy.
NoSignallingReport no_signalling_check(const EmpiricalModel& model,
                                       double tol = 1e-9);

}  // namespace contexture
