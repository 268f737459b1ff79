#include "contexture/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace contexture {

namespace {

constexpr double kPi = std::numbers::pi;

// Snaps x onto the nearest multiple of pi/2 when within kAngleTol, so that
// the half-open interval case splits downstream see exact boundary values.
double snap_quadrant(double x) {
  double q = std::round(x / (kPi / 2.0));
  double snapped = q * (kPi / 2.0);
  return std::abs(x - snapped) <= kAngleTol ? snapped : x;
}

}  // namespace

LocalMeasurement::LocalMeasurement(double theta_in, double phi_in) {
  if (!std::isfinite(theta_in) || !std::isfinite(phi_in)) {
    throw std::invalid_argument("LocalMeasurement: angles must be finite");
  }
  if (theta_in < -kAngleTol || theta_in > kPi + kAngleTol) {
    throw std::invalid_argument("LocalMeasurement: theta outside [0, pi]");
  }
  theta = std::min(std::max(theta_in, 0.0), kPi);
  theta = snap_quadrant(theta);

  // Euclidean remainder: phi in [0, 2pi) regardless of sign of the input.
  phi = std::fmod(phi_in, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  phi = snap_quadrant(phi);
  if (phi >= 2.0 * kPi) phi = 0.0;  // snapping can land exactly on 2pi

  // At the poles the azimuth is meaningless; fix it to 0 so equal
  // measurements compare equal.
  if (theta == 0.0 || theta == kPi) phi = 0.0;
}

LocalMeasurement negate(const LocalMeasurement& m) {
  return LocalMeasurement(kPi - m.theta, m.phi + kPi);
}

StateVector eigenstate(const LocalMeasurement& m, int outcome) {
  if (outcome == -1) return eigenstate(negate(m), +1);
  if (outcome != +1) {
    throw std::invalid_argument("eigenstate: outcome must be +1 or -1");
  }
  double c = std::cos(m.theta / 2.0);
  double s = std::sin(m.theta / 2.0);
  return StateVector(1, {Complex{c, 0.0}, std::polar(s, m.phi)});
}

PlusEvent reduce_to_plus(const LocalMeasurement& m, int outcome) {
  if (outcome == +1) return PlusEvent{m};
  if (outcome == -1) return PlusEvent{negate(m)};
  throw std::invalid_argument("reduce_to_plus: outcome must be +1 or -1");
}

Scenario::Scenario(std::vector<std::vector<LocalMeasurement>> sites)
    : sites_(std::move(sites)) {
  if (sites_.empty()) {
    throw std::invalid_argument("Scenario: need at least one site");
  }
  if (sites_.size() > 20) {
    throw std::invalid_argument("Scenario: too many sites for dense tables");
  }
  for (const auto& s : sites_) {
    if (s.empty()) {
      throw std::invalid_argument("Scenario: every site needs a measurement");
    }
  }
}

std::uint64_t Scenario::n_contexts() const {
  std::uint64_t n = 1;
  for (const auto& s : sites_) n *= s.size();
  return n;
}

std::vector<Context> Scenario::contexts() const {
  std::vector<Context> all;
  all.reserve(n_contexts());
  Context cur(sites_.size(), 0);
  while (true) {
    all.push_back(cur);
    // Mixed-radix increment, last site fastest.
    int s = static_cast<int>(sites_.size()) - 1;
    for (; s >= 0; --s) {
      if (++cur[s] < static_cast<int>(sites_[s].size())) break;
      cur[s] = 0;
    }
    if (s < 0) break;
  }
  return all;
}

std::size_t Scenario::outcome_index(const JointOutcome& o) const {
  if (o.size() != sites_.size()) {
    throw std::invalid_argument("outcome_index: wrong number of sites");
  }
  std::size_t idx = 0;
  for (std::size_t s = 0; s < o.size(); ++s) {
    if (o[s] != +1 && o[s] != -1) {
      throw std::invalid_argument("outcome_index: outcomes are +1/-1");
    }
    idx = (idx << 1) | (o[s] == -1 ? 1u : 0u);
  }
  return idx;
}

JointOutcome Scenario::outcome_from_index(std::size_t idx) const {
  JointOutcome o(sites_.size());
  for (std::size_t s = 0; s < sites_.size(); ++s) {
    bool minus = (idx >> (sites_.size() - 1 - s)) & 1u;
    o[s] = minus ? -1 : +1;
  }
  return o;
}

}  // namespace contexture
