#pragma once

// Measurement scenarios: per-site finite sets of projective qubit
// measurements, contexts (one choice per site), and dichotomic outcomes.
//
// A measurement is the +1/-1 observable whose +1 eigenstate is the Bloch
// vector |theta, phi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.  Angles
// are canonicalized on construction: theta is clamped to [0, pi] (inputs
// outside by more than 1e-12 are rejected), phi is reduced to [0, 2pi), and
// at the poles (theta = 0 or pi) phi is normalized to 0 since it carries no
// information there.  Values within 1e-12 of the distinguished angles
// 0, pi/2, pi, 3pi/2, 2pi snap onto them exactly, so the half-open interval
// case splits used by the deterministic assignment rules never flip on
// floating-point dust.

#include <cstdint>
#include <vector>

#include "contexture/linalg.hpp"

namespace contexture {

// Absolute tolerance for angle canonicalization and snapping.
inline constexpr double kAngleTol = 1e-12;

struct LocalMeasurement {
  double theta = 0.0;  // polar angle in [0, pi]
  double phi = 0.0;    // azimuth in [0, 2pi); 0 at the poles

  LocalMeasurement() = default;
  LocalMeasurement(double theta_in, double phi_in);

  bool operator==(const LocalMeasurement&) const = default;
};

// The same observable with its outcome labels swapped: the +1 eigenstate of
// the result is the -1 eigenstate of `m`.  Antipodal map on the Bloch
// sphere: (theta, phi) -> (pi - theta, phi + pi).
LocalMeasurement negate(const LocalMeasurement& m);

// +1 or -1 eigenstate of `m` as a single-qubit StateVector.  The -1 branch
// is defined as eigenstate(negate(m), +1), so both outcomes flow through
// one code path and the pair is exactly orthogonal.
StateVector eigenstate(const LocalMeasurement& m, int outcome);

// Outcome relabeling view: a (measurement, outcome) pair rewritten so the
// outcome is +1.  Lets deterministic assignment rules be stated for the +1
// branch only.
struct PlusEvent {
  LocalMeasurement measurement;
};
PlusEvent reduce_to_plus(const LocalMeasurement& m, int outcome);

using Outcome = int;  // +1 or -1

// Joint outcome of one measurement per site, site 0 first.
using JointOutcome = std::vector<Outcome>;

// A context: the index of the chosen measurement at each site.
using Context = std::vector<int>;

class Scenario {
 public:
  Scenario() = default;
  explicit Scenario(std::vector<std::vector<LocalMeasurement>> sites);

  int n_sites() const { return static_cast<int>(sites_.size()); }
  const std::vector<std::vector<LocalMeasurement>>& sites() const {
    return sites_;
  }
  const LocalMeasurement& measurement(int site, int index) const {
    return sites_[site][index];
  }

  // Total number of contexts (product of per-site set sizes).
  std::uint64_t n_contexts() const;

  // All contexts in lexicographic order (site 0 varies slowest).
  std::vector<Context> contexts() const;

  // Number of joint outcomes per context: 2^n_sites.
  std::size_t n_outcomes() const { return std::size_t{1} << n_sites(); }

  // Index of a joint outcome within a context's probability row.  Site 0 is
  // the most significant bit; outcome +1 encodes as bit 0, -1 as bit 1, so
  // the all-+1 outcome is index 0.
  std::size_t outcome_index(const JointOutcome& o) const;
  JointOutcome outcome_from_index(std::size_t idx) const;

 private:
  std::vector<std::vector<LocalMeasurement>> sites_;
};

}  // namespace contexture
