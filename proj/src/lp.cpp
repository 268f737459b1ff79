#include "contexture/lp.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace contexture {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr std::uint64_t kIterationCap = 1'000'000;

void validate(const LinearProgram& lp) {
  const std::size_t m = lp.A.size();
  const std::size_t n = lp.c.size();
  if (lp.b.size() != m) {
    throw std::invalid_argument("LinearProgram: |b| must equal row count");
  }
  for (const auto& row : lp.A) {
    if (row.size() != n) {
      throw std::invalid_argument("LinearProgram: ragged constraint matrix");
    }
  }
}

// Dense simplex tableau over doubles.  Rows 0..m-1 hold the constraints in
// basis-reduced form with the right-hand side in the last column; `obj`
// holds the reduced costs and (negated) objective value.  Bland's rule
// everywhere, so no cycling.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t ncols)
      : m_(m), ncols_(ncols), t_(m, std::vector<double>(ncols + 1, 0.0)),
        obj_(ncols + 1, 0.0), basis_(m, 0) {}

  std::vector<std::vector<double>>& rows() { return t_; }
  std::vector<double>& obj() { return obj_; }
  std::vector<int>& basis() { return basis_; }
  double rhs(std::size_t i) const { return t_[i][ncols_]; }
  double value() const { return -obj_[ncols_]; }

  // Prices out the basic columns so reduced costs of basic variables are 0.
  void price_out() {
    for (std::size_t i = 0; i < m_; ++i) {
      double cb = obj_[basis_[i]];
      if (cb != 0.0) {
        for (std::size_t j = 0; j <= ncols_; ++j) obj_[j] -= cb * t_[i][j];
      }
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    double p = t_[row][col];
    for (std::size_t j = 0; j <= ncols_; ++j) t_[row][j] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= ncols_; ++j) t_[i][j] -= f * t_[row][j];
    }
    double f = obj_[col];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= ncols_; ++j) obj_[j] -= f * t_[row][j];
    }
    basis_[row] = static_cast<int>(col);
  }

  // Runs simplex to optimality over columns [0, limit).  Returns optimal,
  // unbounded, or iteration_limit.
  LpStatus run(std::size_t limit, std::uint64_t* iterations) {
    while (true) {
      if (++*iterations > kIterationCap) return LpStatus::iteration_limit;
      // Bland: entering column is the lowest index with positive reduced
      // cost.
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (obj_[j] > kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return LpStatus::optimal;

      // Ratio test; ties broken by the lowest basic variable index (Bland).
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] > kPivotTol) {
          double ratio = rhs(i) / t_[i][enter];
          if (ratio < best - kPivotTol ||
              (ratio < best + kPivotTol &&
               (leave == m_ || basis_[i] < basis_[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave == m_) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t m_;
  std::size_t ncols_;
  std::vector<std::vector<double>> t_;
  std::vector<double> obj_;
  std::vector<int> basis_;
};

}  // namespace

LpResult maximize(const LinearProgram& lp) {
  validate(lp);
  const std::size_t m = lp.A.size();
  const std::size_t n = lp.c.size();

  // Columns: structural 0..n-1, slacks n..n+m-1, then one artificial per
  // negative-rhs row (phase 1 only).
  std::size_t n_art = 0;
  for (double bi : lp.b) {
    if (bi < 0.0) ++n_art;
  }
  const std::size_t ncols = n + m + n_art;
  Tableau t(m, ncols);

  std::size_t art = n + m;
  for (std::size_t i = 0; i < m; ++i) {
    double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.rows()[i][j] = sign * lp.A[i][j];
    t.rows()[i][n + i] = sign;  // slack
    t.rows()[i][ncols] = sign * lp.b[i];
    if (lp.b[i] < 0.0) {
      t.rows()[i][art] = 1.0;
      t.basis()[i] = static_cast<int>(art++);
    } else {
      t.basis()[i] = static_cast<int>(n + i);
    }
  }

  std::uint64_t iterations = 0;
  LpResult result;

  if (n_art > 0) {
    // Phase 1: maximize -(sum of artificials).
    for (std::size_t j = n + m; j < ncols; ++j) t.obj()[j] = -1.0;
    t.price_out();
    LpStatus s = t.run(ncols, &iterations);
    if (s != LpStatus::optimal) {
      result.status = s;
      return result;
    }
    if (t.value() < -kPivotTol) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // Drive out any artificial stuck in the basis at level zero; a row
    // with no real column to pivot on is redundant and harmless since its
    // artificial is frozen at zero by the phase-2 column limit.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] >= static_cast<int>(n + m)) {
        for (std::size_t j = 0; j < n + m; ++j) {
          if (std::abs(t.rows()[i][j]) > kPivotTol) {
            t.pivot(i, j);
            break;
          }
        }
      }
    }
  }

  // Phase 2: the real objective, with artificial columns (if any) excluded
  // from entering.
  std::fill(t.obj().begin(), t.obj().end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) t.obj()[j] = lp.c[j];
  t.price_out();
  LpStatus s = t.run(n + m, &iterations);
  result.status = s;
  if (s != LpStatus::optimal) return result;

  result.value = t.value();
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis()[i] < static_cast<int>(n)) {
      result.x[t.basis()[i]] = t.rhs(i);
    }
  }
  // Duals from the slack reduced costs: slack j has cost 0, so its reduced
  // cost at optimality is -y_j.
  result.y.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) result.y[i] = -t.obj()[n + i];
  return result;
}

// ---------------------------------------------------------------------------
// Exact rational vertex search

namespace {

using Rational = boost::multiprecision::cpp_rational;

struct ExactTableau {
  std::size_t m, total;  // rows, columns (structural + slack)
  std::vector<std::vector<Rational>> t;  // m x (total + 1)
  std::vector<int> basis;
  std::vector<Rational> cost;  // per column; slacks cost 0

  void pivot(std::size_t row, std::size_t col) {
    Rational p = t[row][col];
    for (auto& v : t[row]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      Rational f = t[i][col];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= total; ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = static_cast<int>(col);
  }

  Rational objective() const {
    Rational v = 0;
    for (std::size_t i = 0; i < m; ++i) v += cost[basis[i]] * t[i][total];
    return v;
  }

  std::uint64_t basis_mask() const {
    std::uint64_t mask = 0;
    for (int b : basis) mask |= std::uint64_t{1} << b;
    return mask;
  }
};

}  // namespace

double brute_force_vertex_opt(const LinearProgram& lp) {
  validate(lp);
  const std::size_t m = lp.A.size();
  const std::size_t n = lp.c.size();
  if (n > 16 || m > 20) {
    throw std::invalid_argument(
        "brute_force_vertex_opt: instance too large for the exact oracle");
  }
  for (double bi : lp.b) {
    if (bi < 0.0) {
      throw std::invalid_argument(
          "brute_force_vertex_opt: negative right-hand sides unsupported");
    }
  }

  // Standard form [A | I] with the slack basis, exact from the double bits.
  ExactTableau et;
  et.m = m;
  et.total = n + m;
  et.t.assign(m, std::vector<Rational>(et.total + 1, Rational{0}));
  et.basis.resize(m);
  et.cost.assign(et.total, Rational{0});
  for (std::size_t j = 0; j < n; ++j) et.cost[j] = Rational(lp.c[j]);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) et.t[i][j] = Rational(lp.A[i][j]);
    et.t[i][n + i] = 1;
    et.t[i][et.total] = Rational(lp.b[i]);
    et.basis[i] = static_cast<int>(n + i);
  }

  constexpr std::uint64_t kBasisCap = std::uint64_t{1} << 20;
  std::unordered_set<std::uint64_t> visited;
  visited.insert(et.basis_mask());

  Rational best = et.objective();

  struct Move {
    std::size_t row;
    int in_col;
    int out_col;
  };
  struct Frame {
    std::vector<Move> moves;
    std::size_t next = 0;
    Move entry;  // pivot that produced this node (undone when popped)
  };

  auto neighbors = [&]() {
    std::vector<Move> moves;
    std::vector<bool> is_basic(et.total, false);
    for (int b : et.basis) is_basic[b] = true;
    for (std::size_t j = 0; j < et.total; ++j) {
      if (is_basic[j]) continue;
      // Reduced cost, for unboundedness detection only.
      Rational z = 0;
      bool has_positive = false;
      for (std::size_t i = 0; i < m; ++i) {
        z += et.cost[et.basis[i]] * et.t[i][j];
        if (et.t[i][j] > 0) has_positive = true;
      }
      if (!has_positive) {
        if (et.cost[j] - z > 0) {
          throw std::runtime_error("brute_force_vertex_opt: LP is unbounded");
        }
        continue;
      }
      // Minimum-ratio rows (all of them, to cross degenerate vertices).
      Rational best_ratio{-1};
      for (std::size_t i = 0; i < m; ++i) {
        if (et.t[i][j] <= 0) continue;
        Rational ratio = et.t[i][et.total] / et.t[i][j];
        if (best_ratio < 0 || ratio < best_ratio) best_ratio = ratio;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (et.t[i][j] <= 0) continue;
        if (et.t[i][et.total] / et.t[i][j] == best_ratio) {
          moves.push_back(
              Move{i, static_cast<int>(j), et.basis[i]});
        }
      }
    }
    return moves;
  };

  std::vector<Frame> stack;
  stack.push_back(Frame{neighbors(), 0, Move{0, -1, -1}});

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next >= f.moves.size()) {
      if (f.entry.in_col >= 0) {
        et.pivot(f.entry.row, static_cast<std::size_t>(f.entry.out_col));
      }
      stack.pop_back();
      continue;
    }
    Move mv = f.moves[f.next++];
    // Apply, then check whether the resulting basis is new.
    et.pivot(mv.row, static_cast<std::size_t>(mv.in_col));
    std::uint64_t key = et.basis_mask();
    if (visited.count(key)) {
      et.pivot(mv.row, static_cast<std::size_t>(mv.out_col));
      continue;
    }
    if (visited.size() >= kBasisCap) {
      throw std::runtime_error(
          "brute_force_vertex_opt: feasible-basis cap exceeded");
    }
    visited.insert(key);
    Rational v = et.objective();
    if (v > best) best = v;
    stack.push_back(Frame{neighbors(), 0, mv});
  }

  return static_cast<double>(best);
}

}  // namespace contexture
