#include "contexture/empirical.hpp"

#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace contexture {

Complex amplitude(const StateVector& psi, const Scenario& sc,
                  const Context& ctx, const JointOutcome& outcome) {
  const int n = sc.n_sites();
  if (psi.n_qubits() != n) {
    throw std::invalid_argument("amplitude: state/scenario site mismatch");
  }
  std::vector<StateVector> factors;
  factors.reserve(n);
  for (int s = 0; s < n; ++s) {
    factors.push_back(eigenstate(sc.measurement(s, ctx[s]), outcome[s]));
  }
  return inner(tensor_all(factors), psi);
}

EmpiricalModel build_model(const StateVector& psi, const Scenario& sc) {
  if (psi.n_qubits() != sc.n_sites()) {
    throw std::invalid_argument("build_model: state/scenario site mismatch");
  }
  std::vector<Context> ctxs = sc.contexts();
  EmpiricalModel model{sc, std::vector<std::vector<double>>(ctxs.size())};
  detail::parallel_for(ctxs.size(), [&](std::size_t c) {
    std::vector<double> row(sc.n_outcomes());
    for (std::size_t o = 0; o < row.size(); ++o) {
      row[o] = std::norm(amplitude(psi, sc, ctxs[c], sc.outcome_from_index(o)));
    }
    model.table[c] = std::move(row);
  });
  return model;
}

Support support_of(const EmpiricalModel& model, double eps) {
  Support s{model.scenario, {}};
  s.possible.reserve(model.table.size());
  for (const auto& row : model.table) {
    std::vector<bool> mask(row.size());
    for (std::size_t o = 0; o < row.size(); ++o) mask[o] = row[o] > eps;
    s.possible.push_back(std::move(mask));
  }
  return s;
}

NoSignallingReport no_signalling_check(const EmpiricalModel& model,
                                       double tol) {
  const Scenario& sc = model.scenario;
  const int n = sc.n_sites();
  const std::vector<Context> ctxs = sc.contexts();
  NoSignallingReport report;

  // For every proper nonempty subset S of sites and every fixing of the
  // measurements and outcomes on S, the summed probability must agree
  // across all contexts extending the fixing.  Keyed scan: for each subset,
  // bucket contexts by their S-restriction and compare marginal vectors.
  for (unsigned subset = 1; subset + 1 < (1u << n); ++subset) {
    std::vector<int> in_subset;
    for (int s = 0; s < n; ++s) {
      if (subset & (1u << s)) in_subset.push_back(s);
    }
    const std::size_t marg_size = std::size_t{1} << in_subset.size();

    // Group contexts sharing the same restriction to `in_subset`.
    std::vector<std::vector<double>> reference;  // keyed by restriction index
    std::vector<bool> seen;
    std::size_t key_space = 1;
    for (int s : in_subset) key_space *= sc.sites()[s].size();
    reference.assign(key_space, {});
    seen.assign(key_space, false);

    for (std::size_t c = 0; c < ctxs.size(); ++c) {
      std::size_t key = 0;
      for (int s : in_subset) key = key * sc.sites()[s].size() + ctxs[c][s];

      std::vector<double> marg(marg_size, 0.0);
      for (std::size_t o = 0; o < sc.n_outcomes(); ++o) {
        std::size_t mo = 0;
        for (int s : in_subset) {
          mo = (mo << 1) | ((o >> (n - 1 - s)) & 1u);
        }
        marg[mo] += model.table[c][o];
      }

      if (!seen[key]) {
        reference[key] = std::move(marg);
        seen[key] = true;
      } else {
        for (std::size_t i = 0; i < marg_size; ++i) {
          double d = std::abs(marg[i] - reference[key][i]);
          if (d > report.worst_violation) report.worst_violation = d;
        }
      }
    }
  }
  report.ok = report.worst_violation <= tol;
  return report;
}

}  // namespace contexture
