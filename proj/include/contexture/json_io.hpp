#pragma once

// JSON (de)serialization for scenarios, states, empirical models, and check
// reports, matching the file formats the CLI reads and writes.
//
//   scenario:  {"sites": [[{"theta": t, "phi": p}, ...], ...]}
//   state:     {"family": "ghz", "params": {...}}  or
//              {"amplitudes": [[re, im], ...]}
//   model:     {"scenario": ..., "table": [{"context": [i, ...],
//               "probs": {"++-": p, ...}}, ...]}      (outcome strings use
//              '+' for +1 and '-' for -1, site 0 first; only nonzero
//              entries are written)
//   report:    {"strongly_contextual": b, "witness": {...}|null,
//               "cf": x, "ncf": y, "gf2": {...}}     (gf2 present only for
//              family models)
//
// Floats are written with 12 significant digits; round-tripping a model
// preserves every probability to that precision, which is far inside every
// tolerance used by the checks.

#include <json.hpp>
#include <optional>
#include <string>
#include <utility>

#include "contexture/contextuality.hpp"
#include "contexture/empirical.hpp"
#include "contexture/scenario.hpp"
#include "contexture/states.hpp"

namespace contexture {

// Rounds to 12 significant digits (exact for zeros/infinities); applied to
// every float serialized here so files are stable across platforms.
double round_sig(double x);

nlohmann::json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const nlohmann::json& j);

// Parses either a named family with params or a raw amplitude list.
// Families: "ghz" {n}; "w" {}; "bipartite" {delta}; "ghz_canonical" {delta,
// alpha, beta, gamma, phi_phase}; "w_class" {a, b, c, d}; "ghz_slocc" {delta,
// lambdas, phi_phase}; "balanced" {lambdas, phi_phase}.  Throws
// std::invalid_argument with a message naming the offending field on
// malformed input.
StateVector state_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const EmpiricalModel& model);
EmpiricalModel model_from_json(const nlohmann::json& j);

struct CheckReport {
  bool strongly_contextual = false;
  std::optional<GlobalAssignment> witness;
  // Set when the fraction LP was run; serialized as null otherwise.
  std::optional<double> cf;
  std::optional<double> ncf;
  // Set for family models: whether each GF(2) branch is unsatisfiable.
  std::optional<std::pair<bool, bool>> gf2_unsat;
};
nlohmann::json report_to_json(const CheckReport& report, const Scenario& sc);

// Scenario shorthand for the CLI: sites split by ';', measurements within a
// site by commas outside parentheses.  A measurement is one of the tokens
// X = (pi/2, 0), Y = (pi/2, pi/2), Z = (0, 0), or a literal "(theta,phi)"
// pair of plain decimal angles in radians.
// Example: "X,Y;X,Y;(1.5707963267948966,0)".
Scenario scenario_from_shorthand(const std::string& text);

}  // namespace contexture
