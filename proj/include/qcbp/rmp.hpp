#pragma once

// Restricted master problem of the set-partitioning coloring LP
//   min Σ λ_S   s.t.  Σ_{S∋i} λ_S = 1  (all i),  λ ≥ 0
// over a pool of independent sets, solved with a dense revised simplex that
// starts from the singleton identity basis.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "qcbp/graph.hpp"

namespace qcbp {

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ColumnOrigin { singleton, quantum, exact_pricer, inherited, classical };

inline const char* to_string(ColumnOrigin o) {
  switch (o) {
    case ColumnOrigin::singleton: return "singleton";
    case ColumnOrigin::quantum: return "quantum";
    case ColumnOrigin::exact_pricer: return "exact_pricer";
    case ColumnOrigin::inherited: return "inherited";
    case ColumnOrigin::classical: return "classical";
  }
  return "?";
}

struct Column {
  VertexSet set;
  double discovered_reduced_cost = 0.0;
  bool is_maximal = false;
  ColumnOrigin origin = ColumnOrigin::singleton;
};

struct RmpModel {
  Graph graph;
  std::vector<Column> columns;
  std::unordered_set<VertexSet, VertexSetHash> index;

  bool contains(VertexSet s) const { return index.count(s) != 0; }
};

struct RmpSolution {
  std::vector<double> lambda;  // per column
  std::vector<double> duals;   // per vertex
  double objective = 0.0;
  int pivots = 0;
};

struct LpTolerances {
  double feasibility = 1e-9;
  double optimality = 1e-7;
  double pivot = 1e-9;
  int bland_after_degenerate = 500;
  int refactor_every = 32;
  int max_pivots = 100000;
};

inline RmpModel init_rmp(const Graph& g) {
  if (g.n() < 1) throw LpError("init_rmp: graph has no vertices");
  RmpModel m;
  m.graph = g;
  for (int v = 0; v < g.n(); ++v) {
    const auto s = VertexSet::single(v);
    m.columns.push_back({s, 0.0, is_maximal_independent(g, s), ColumnOrigin::singleton});
    m.index.insert(s);
  }
  return m;
}

/// Inserts columns not already present; throws on a dependent set.
inline int add_columns(RmpModel& m, const std::vector<Column>& cols) {
  int added = 0;
  for (const auto& c : cols) {
    if (c.set.empty() || !c.set.is_subset_of(m.graph.vertices()))
      throw LpError("add_columns: set " + to_string(c.set) + " is empty or out of range");
    if (!is_independent(m.graph, c.set))
      throw LpError("add_columns: set " + to_string(c.set) + " is not independent");
    if (!m.index.insert(c.set).second) continue;
    m.columns.push_back(c);
    ++added;
  }
  return added;
}

inline int add_columns(RmpModel& m, const std::vector<VertexSet>& sets,
                       ColumnOrigin origin = ColumnOrigin::classical) {
  std::vector<Column> cols;
  cols.reserve(sets.size());
  for (auto s : sets) cols.push_back({s, 0.0, is_maximal_independent(m.graph, s), origin});
  return add_columns(m, cols);
}

namespace detail {

using Dense = std::vector<std::vector<double>>;

// Gauss-Jordan inverse with partial pivoting.
inline Dense invert(Dense a, double pivot_tol) {
  const std::size_t m = a.size();
  Dense inv(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < pivot_tol) throw LpError("simplex: singular basis during refactorisation");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double p = a[col][col];
    for (std::size_t k = 0; k < m; ++k) { a[col][k] /= p; inv[col][k] /= p; }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col];
      for (std::size_t k = 0; k < m; ++k) { a[r][k] -= f * a[col][k]; inv[r][k] -= f * inv[col][k]; }
    }
  }
  return inv;
}

inline Dense basis_matrix(const RmpModel& model, const std::vector<int>& basis) {
  const std::size_t m = basis.size();
  Dense b(m, std::vector<double>(m, 0.0));
  for (std::size_t k = 0; k < m; ++k)
    model.columns[static_cast<std::size_t>(basis[k])].set.for_each(
        [&](int i) { b[static_cast<std::size_t>(i)][k] = 1.0; });
  return b;
}

}  // namespace detail

/// Optimal basic solution and basis duals. Requires every singleton column.
inline RmpSolution solve_rmp(const RmpModel& model, const LpTolerances& tol = {}) {
  const int m = model.graph.n();
  const auto mm = static_cast<std::size_t>(m);
  const std::size_t ncols = model.columns.size();
  if (m < 1) throw LpError("solve_rmp: empty model");

  std::vector<int> basis(mm, -1);
  for (std::size_t j = 0; j < ncols; ++j) {
    const auto s = model.columns[j].set;
    if (s.size() == 1 && basis[static_cast<std::size_t>(s.first())] < 0)
      basis[static_cast<std::size_t>(s.first())] = static_cast<int>(j);
  }
  for (int i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] < 0)
      throw LpError("solve_rmp: vertex " + std::to_string(i) + " has no singleton column");

  std::vector<char> in_basis(ncols, 0);
  for (int j : basis) in_basis[static_cast<std::size_t>(j)] = 1;

  // Row k of binv belongs to basic variable basis[k].
  detail::Dense binv(mm, std::vector<double>(mm, 0.0));
  for (std::size_t i = 0; i < mm; ++i) binv[i][i] = 1.0;
  std::vector<double> x(mm, 1.0), y(mm), u(mm);

  auto compute_duals = [&] {
    // y^T = c_B^T B^{-1} with c_B = 1
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t k = 0; k < mm; ++k)
      for (std::size_t i = 0; i < mm; ++i) y[i] += binv[k][i];
  };
  auto reduced_cost = [&](std::size_t j) {
    double s = 1.0;
    model.columns[j].set.for_each([&](int i) { s -= y[static_cast<std::size_t>(i)]; });
    return s;
  };
  auto refactor = [&] {
    binv = detail::invert(detail::basis_matrix(model, basis), tol.pivot);
    for (std::size_t k = 0; k < mm; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < mm; ++i) s += binv[k][i];
      x[k] = s;
    }
  };

  int pivots = 0, degenerate = 0, since_refactor = 0;
  for (;;) {
    compute_duals();
    const bool bland = degenerate >= tol.bland_after_degenerate;
    std::size_t enter = ncols;
    double best = -tol.optimality;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (in_basis[j]) continue;
      const double d = reduced_cost(j);
      if (d < best) {
        enter = j;
        if (bland) break;
        best = d;
      }
    }
    if (enter == ncols) break;

    std::fill(u.begin(), u.end(), 0.0);
    model.columns[enter].set.for_each([&](int i) {
      for (std::size_t k = 0; k < mm; ++k) u[k] += binv[k][static_cast<std::size_t>(i)];
    });
    std::size_t leave = mm;
    double ratio = 0.0;
    for (std::size_t k = 0; k < mm; ++k) {
      if (u[k] <= tol.pivot) continue;
      const double r = std::max(x[k], 0.0) / u[k];
      const bool take = leave == mm || r < ratio - 1e-12 ||
                        (r <= ratio + 1e-12 &&
                         (bland ? basis[k] < basis[leave] : u[k] > u[leave]));
      if (take) { leave = k; ratio = r; }
    }
    if (leave == mm) throw LpError("solve_rmp: unbounded direction (numerical failure)");

    const double piv = u[leave];
    for (std::size_t i = 0; i < mm; ++i) binv[leave][i] /= piv;
    x[leave] /= piv;
    for (std::size_t k = 0; k < mm; ++k) {
      if (k == leave || u[k] == 0.0) continue;
      for (std::size_t i = 0; i < mm; ++i) binv[k][i] -= u[k] * binv[leave][i];
      x[k] -= u[k] * x[leave];
    }
    in_basis[static_cast<std::size_t>(basis[leave])] = 0;
    basis[leave] = static_cast<int>(enter);
    in_basis[enter] = 1;

    degenerate += ratio <= 1e-12 ? 1 : 0;
    if (++since_refactor >= tol.refactor_every) { refactor(); since_refactor = 0; }
    if (++pivots > tol.max_pivots) throw LpError("solve_rmp: pivot limit exceeded");
  }

  refactor();
  compute_duals();
  RmpSolution sol;
  sol.pivots = pivots;
  sol.lambda.assign(ncols, 0.0);
  for (std::size_t k = 0; k < mm; ++k) {
    double v = x[k];
    if (v < -tol.feasibility) throw LpError("solve_rmp: final basis is primal infeasible");
    if (v < 0.0) v = 0.0;
    sol.lambda[static_cast<std::size_t>(basis[k])] = v;
  }
  sol.duals = y;
  for (double v : sol.lambda) sol.objective += v;
  return sol;
}

/// CPLEX LP text dump of the model, for cross-checking with external solvers.
inline void write_lp(std::ostream& out, const RmpModel& m) {
  out << "\\ restricted master problem: " << m.graph.n() << " rows, " << m.columns.size() << " columns\n";
  out << "Minimize\n obj:";
  for (std::size_t j = 0; j < m.columns.size(); ++j) out << (j ? " + " : " ") << "x" << j;
  out << "\nSubject To\n";
  for (int i = 0; i < m.graph.n(); ++i) {
    out << " v" << i << ":";
    bool first = true;
    for (std::size_t j = 0; j < m.columns.size(); ++j) {
      if (!m.columns[j].set.contains(i)) continue;
      out << (first ? " " : " + ") << "x" << j;
      first = false;
    }
    out << " = 1\n";
  }
  out << "End\n";
}

}  // namespace qcbp
