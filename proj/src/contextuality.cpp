#include "contexture/contextuality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contexture {

namespace {

// Flat indexing of the (site, measurement) variables, site-major.
struct VarLayout {
  std::vector<int> site_offset;  // site -> first variable id
  int total = 0;

  explicit VarLayout(const Scenario& sc) {
    site_offset.reserve(sc.n_sites());
    for (const auto& site : sc.sites()) {
      site_offset.push_back(total);
      total += static_cast<int>(site.size());
    }
  }

  int var(int site, int meas) const { return site_offset[site] + meas; }
};

// Backtracking core: assigns variables in order, trying +1 before -1, and
// checks each context as soon as its last variable (in that order) is set.
// `pinned[v]` of +1/-1 fixes a variable, 0 leaves it free.  Returns the
// first (lexicographically least) completion found.
struct Searcher {
  const Support& support;
  const Scenario& sc;
  VarLayout layout;
  std::vector<Context> ctxs;
  std::vector<std::vector<std::size_t>> decided_at;  // var -> context ids
  std::vector<Outcome> value;
  std::uint64_t nodes = 0;

  explicit Searcher(const Support& s)
      : support(s), sc(s.scenario), layout(sc), ctxs(sc.contexts()),
        decided_at(layout.total), value(layout.total, 0) {
    for (std::size_t c = 0; c < ctxs.size(); ++c) {
      int last = -1;
      for (int site = 0; site < sc.n_sites(); ++site) {
        last = std::max(last, layout.var(site, ctxs[c][site]));
      }
      decided_at[last].push_back(c);
    }
  }

  bool context_ok(std::size_t c) const {
    std::size_t idx = 0;
    for (int site = 0; site < sc.n_sites(); ++site) {
      Outcome o = value[layout.var(site, ctxs[c][site])];
      idx = (idx << 1) | (o == -1 ? 1u : 0u);
    }
    return support.possible[c][idx];
  }

  bool extend(int v, const std::vector<Outcome>& pinned) {
    if (v == layout.total) return true;
    for (Outcome o : {+1, -1}) {
      if (pinned[v] != 0 && pinned[v] != o) continue;
      ++nodes;
      value[v] = o;
      bool ok = true;
      for (std::size_t c : decided_at[v]) {
        if (!context_ok(c)) {
          ok = false;
          break;
        }
      }
      if (ok && extend(v + 1, pinned)) return true;
    }
    value[v] = 0;
    return false;
  }

  GlobalAssignment snapshot() const {
    GlobalAssignment g(sc.n_sites());
    for (int site = 0; site < sc.n_sites(); ++site) {
      const auto& ms = sc.sites()[site];
      g[site].resize(ms.size());
      for (std::size_t i = 0; i < ms.size(); ++i) {
        g[site][i] = value[layout.var(site, static_cast<int>(i))];
      }
    }
    return g;
  }
};

}  // namespace

SearchResult find_consistent_assignment(const Support& support) {
  Searcher s(support);
  std::vector<Outcome> unpinned(s.layout.total, 0);
  SearchResult result;
  result.exists = s.extend(0, unpinned);
  result.nodes_explored = s.nodes;
  if (result.exists) result.witness = s.snapshot();
  return result;
}

std::vector<std::pair<std::size_t, std::size_t>> logically_contextual_events(
    const Support& support) {
  const Scenario& sc = support.scenario;
  std::vector<Context> ctxs = sc.contexts();
  std::vector<std::pair<std::size_t, std::size_t>> events;
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    for (std::size_t o = 0; o < sc.n_outcomes(); ++o) {
      if (!support.possible[c][o]) continue;
      Searcher s(support);
      std::vector<Outcome> pinned(s.layout.total, 0);
      JointOutcome jo = sc.outcome_from_index(o);
      for (int site = 0; site < sc.n_sites(); ++site) {
        pinned[s.layout.var(site, ctxs[c][site])] = jo[site];
      }
      if (!s.extend(0, pinned)) events.emplace_back(c, o);
    }
  }
  return events;
}

// ---------------------------------------------------------------------------
// Contextual fraction

namespace {

// Assignments are encoded as bit strings over the flat variables, bit 1
// meaning outcome -1, so encoding order equals the search's lexicographic
// value order.
std::size_t row_of(const std::vector<std::size_t>& row_offset, std::size_t c,
                   std::size_t o) {
  return row_offset[c] + o;
}

std::size_t outcome_of(std::uint64_t g, const VarLayout& layout,
                       const Context& ctx) {
  std::size_t idx = 0;
  for (std::size_t site = 0; site < ctx.size(); ++site) {
    int v = layout.var(static_cast<int>(site), ctx[site]);
    idx = (idx << 1) | ((g >> v) & 1u);
  }
  return idx;
}

std::vector<double> assignment_column(std::uint64_t g, const VarLayout& layout,
                                      const std::vector<Context>& ctxs,
                                      const std::vector<std::size_t>& row_offset,
                                      std::size_t n_rows) {
  std::vector<double> col(n_rows, 0.0);
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    col[row_of(row_offset, c, outcome_of(g, layout, ctxs[c]))] = 1.0;
  }
  return col;
}

}  // namespace

FractionResult contextual_fraction(const EmpiricalModel& model) {
  const Scenario& sc = model.scenario;
  VarLayout layout(sc);
  if (layout.total > 20) {
    throw std::invalid_argument(
        "contextual_fraction: more than 20 measurements in total");
  }
  const std::vector<Context> ctxs = sc.contexts();
  std::vector<std::size_t> row_offset(ctxs.size());
  std::size_t n_rows = 0;
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    row_offset[c] = n_rows;
    n_rows += sc.n_outcomes();
  }
  std::vector<double> rhs(n_rows);
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    for (std::size_t o = 0; o < sc.n_outcomes(); ++o) {
      rhs[row_of(row_offset, c, o)] = model.table[c][o];
    }
  }

  const std::uint64_t n_assignments = std::uint64_t{1} << layout.total;
  constexpr std::uint64_t kFullEnumerationCap = 4096;
  constexpr int kMaxRounds = 500;
  constexpr std::size_t kColumnsPerRound = 256;
  constexpr double kRcTol = 1e-9;

  auto finish = [](double value, LpStatus status) {
    FractionResult r;
    r.status = status;
    r.ncf = std::clamp(value, 0.0, 1.0);
    r.cf = 1.0 - r.ncf;
    return r;
  };

  if (n_assignments <= kFullEnumerationCap) {
    // Small scenario: one LP over every global assignment.
    LinearProgram lp;
    lp.A.assign(n_rows, std::vector<double>(n_assignments, 0.0));
    lp.b = rhs;
    lp.c.assign(n_assignments, 1.0);
    for (std::uint64_t g = 0; g < n_assignments; ++g) {
      for (std::size_t c = 0; c < ctxs.size(); ++c) {
        lp.A[row_of(row_offset, c, outcome_of(g, layout, ctxs[c]))][g] = 1.0;
      }
    }
    LpResult res = maximize(lp);
    return finish(res.value, res.status);
  }

  // Column generation: grow a master LP over a subset of assignments until
  // no assignment prices favourably against the master duals.
  std::vector<std::uint64_t> columns;
  std::vector<bool> in_master(n_assignments, false);

  for (int round = 0; round < kMaxRounds; ++round) {
    LinearProgram master;
    master.b = rhs;
    master.c.assign(columns.size(), 1.0);
    master.A.assign(n_rows, std::vector<double>(columns.size(), 0.0));
    for (std::size_t k = 0; k < columns.size(); ++k) {
      for (std::size_t c = 0; c < ctxs.size(); ++c) {
        master.A[row_of(row_offset, c,
                        outcome_of(columns[k], layout, ctxs[c]))][k] = 1.0;
      }
    }
    LpResult res = maximize(master);
    if (res.status != LpStatus::optimal) return finish(res.value, res.status);
    const std::vector<double>& y = res.y;  // all zeros on the empty master

    // Price every assignment: reduced cost 1 - sum of duals along its rows.
    std::vector<std::pair<double, std::uint64_t>> entering;
    for (std::uint64_t g = 0; g < n_assignments; ++g) {
      if (in_master[g]) continue;
      double dual_sum = 0.0;
      for (std::size_t c = 0; c < ctxs.size(); ++c) {
        dual_sum += y[row_of(row_offset, c, outcome_of(g, layout, ctxs[c]))];
      }
      if (1.0 - dual_sum > kRcTol) entering.emplace_back(dual_sum, g);
    }
    if (entering.empty()) return finish(res.value, res.status);

    // Deterministic: best reduced cost first, encoding as tie-break.
    std::sort(entering.begin(), entering.end());
    if (entering.size() > kColumnsPerRound) entering.resize(kColumnsPerRound);
    for (const auto& [dual_sum, g] : entering) {
      columns.push_back(g);
      in_master[g] = true;
    }
  }
  return finish(0.0, LpStatus::iteration_limit);
}

// ---------------------------------------------------------------------------
// GF(2)

bool gf2_unsatisfiable(const Gf2System& sys) {
  std::vector<std::vector<uint8_t>> rows = sys.rows;
  std::vector<uint8_t> rhs = sys.rhs;
  const int nv = sys.num_vars;
  std::size_t rank = 0;
  for (int col = 0; col < nv && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    std::swap(rhs[rank], rhs[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][col]) {
        for (int j = 0; j < nv; ++j) rows[r][j] ^= rows[rank][j];
        rhs[r] ^= rhs[rank];
      }
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (rhs[r]) return true;  // 0 = 1
  }
  return false;
}

bool gf2_equivalent_rows(const Gf2System& lhs, const Gf2System& rhs) {
  if (lhs.num_vars != rhs.num_vars) return false;
  auto canonical = [](const Gf2System& sys) {
    std::vector<std::pair<std::vector<uint8_t>, uint8_t>> rows;
    rows.reserve(sys.rows.size());
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
      rows.emplace_back(sys.rows[r], sys.rhs[r]);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  return canonical(lhs) == canonical(rhs);
}

std::vector<std::vector<uint8_t>> gf2_solutions(const Gf2System& sys) {
  if (sys.num_vars > 20) {
    throw std::invalid_argument("gf2_solutions: too many variables");
  }
  std::vector<std::vector<uint8_t>> sols;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << sys.num_vars);
       ++bits) {
    bool ok = true;
    for (std::size_t r = 0; r < sys.rows.size() && ok; ++r) {
      uint8_t acc = 0;
      for (int v = 0; v < sys.num_vars; ++v) {
        acc ^= sys.rows[r][v] & static_cast<uint8_t>((bits >> v) & 1u);
      }
      ok = acc == sys.rhs[r];
    }
    if (ok) {
      std::vector<uint8_t> sol(sys.num_vars);
      for (int v = 0; v < sys.num_vars; ++v) {
        sol[v] = static_cast<uint8_t>((bits >> v) & 1u);
      }
      sols.push_back(std::move(sol));
    }
  }
  return sols;
}

}  // namespace contexture
