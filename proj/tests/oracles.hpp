#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the solver code paths it is used to check.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "qcbp/emulator.hpp"
#include "qcbp/graph.hpp"

namespace qcbp::oracle {

inline Graph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(p);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (edge(rng)) g.add_edge(u, v);
  return g;
}

inline bool independent_by_pairs(const Graph& g, std::uint64_t mask);

/// Up to `count` distinct independent sets of size >= 2, drawn by rejection.
inline std::vector<VertexSet> random_independent_sets(const Graph& g, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<VertexSet> out;
  const std::uint64_t all = (std::uint64_t{1} << g.n()) - 1;
  for (int attempt = 0; attempt < 200 * count && static_cast<int>(out.size()) < count; ++attempt) {
    const std::uint64_t m = rng() & rng() & all;
    if (std::popcount(m) < 2 || !independent_by_pairs(g, m)) continue;
    if (std::find(out.begin(), out.end(), VertexSet(m)) == out.end()) out.emplace_back(m);
  }
  return out;
}

inline bool independent_by_pairs(const Graph& g, std::uint64_t mask) {
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (((mask >> u) & 1U) && ((mask >> v) & 1U) && g.adjacent(u, v)) return false;
  return true;
}

/// Every non-empty independent set, by exhaustive subset enumeration.
inline std::vector<VertexSet> all_independent_sets(const Graph& g) {
  std::vector<VertexSet> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << g.n()); ++m)
    if (independent_by_pairs(g, m)) out.emplace_back(m);
  return out;
}

inline std::vector<VertexSet> all_maximal_independent_sets(const Graph& g) {
  std::vector<VertexSet> out;
  for (auto s : all_independent_sets(g)) {
    bool maximal = true;
    for (int v = 0; v < g.n() && maximal; ++v)
      if (!s.contains(v) && independent_by_pairs(g, s.bits() | (std::uint64_t{1} << v))) maximal = false;
    if (maximal) out.push_back(s);
  }
  return out;
}

struct MwisAnswer {
  double weight = 0.0;
  VertexSet set;
};

/// Exhaustive MWIS; among sets within 1e-12 of the optimum picks the one with
/// lexicographically smallest sorted member list.
inline MwisAnswer brute_force_mwis(const Graph& g, const std::vector<double>& w) {
  MwisAnswer best;
  std::vector<int> best_members;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n()); ++m) {
    if (!independent_by_pairs(g, m)) continue;
    double s = 0.0;
    std::vector<int> members;
    for (int v = 0; v < g.n(); ++v)
      if ((m >> v) & 1U) { s += w[static_cast<std::size_t>(v)]; members.push_back(v); }
    const bool better = s > best.weight + 1e-12 ||
                        (s >= best.weight - 1e-12 && std::lexicographical_compare(members.begin(), members.end(),
                                                                                  best_members.begin(), best_members.end()));
    if (better) { best = {s, VertexSet(m)}; best_members = members; }
  }
  return best;
}

/// Smallest k admitting a proper k-colouring, by plain index-order backtracking.
inline int brute_force_chromatic(const Graph& g) {
  if (g.n() == 0) return 0;
  std::vector<int> color(static_cast<std::size_t>(g.n()), -1);
  for (int k = 1; k <= g.n(); ++k) {
    auto rec = [&](auto&& self, int v) -> bool {
      if (v == g.n()) return true;
      for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (int u = 0; u < v && ok; ++u)
          if (g.adjacent(u, v) && color[static_cast<std::size_t>(u)] == c) ok = false;
        if (!ok) continue;
        color[static_cast<std::size_t>(v)] = c;
        if (self(self, v + 1)) return true;
      }
      color[static_cast<std::size_t>(v)] = -1;
      return false;
    };
    if (rec(rec, 0)) return k;
  }
  return g.n();
}

/// max Σ π  s.t.  Σ_{i∈S} π_i ≤ 1 for each S in `sets`, π ≥ 0.
/// Dense tableau simplex, slack start, Bland's rule.
inline double packing_lp_value(int n, const std::vector<VertexSet>& sets) {
  const std::size_t m = sets.size();
  const std::size_t cols = static_cast<std::size_t>(n) + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    sets[r].for_each([&](int v) { t[r][static_cast<std::size_t>(v)] = 1.0; });
    t[r][static_cast<std::size_t>(n) + r] = 1.0;
    t[r][cols] = 1.0;
  }
  std::vector<double> obj(cols + 1, 0.0);  // reduced costs of max problem as z - c
  for (int v = 0; v < n; ++v) obj[static_cast<std::size_t>(v)] = -1.0;
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = static_cast<std::size_t>(n) + r;
  for (int guard = 0; guard < 100000; ++guard) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (obj[j] < -1e-12) { enter = j; break; }
    if (enter == cols) break;
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 1e-12) continue;
      const double ratio = t[r][cols] / t[r][enter];
      if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && leave < m && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == m) return std::numeric_limits<double>::infinity();
    const double p = t[leave][enter];
    for (auto& x : t[leave]) x /= p;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || t[r][enter] == 0.0) continue;
      const double f = t[r][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[r][j] -= f * t[leave][j];
    }
    const double f = obj[enter];
    for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  return obj[cols];
}

/// Fractional chromatic number: the LP optimum over the full independent-set pool.
inline double fractional_chromatic(const Graph& g) {
  return packing_lp_value(g.n(), all_maximal_independent_sets(g));
}

/// min Σλ s.t. Σ_{S∋i} λ_S = 1, λ ≥ 0 over the given columns, by enumerating
/// every square basis and solving it with Cramer-free Gaussian elimination.
/// Only for a handful of columns.
inline std::optional<double> partition_lp_by_bases(int n, const std::vector<VertexSet>& cols) {
  const std::size_t k = cols.size();
  const auto m = static_cast<std::size_t>(n);
  std::optional<double> best;
  std::vector<std::size_t> pick(m);
  auto solve_basis = [&]() -> std::optional<std::vector<double>> {
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t j = 0; j < m; ++j)
      cols[pick[j]].for_each([&](int i) { a[static_cast<std::size_t>(i)][j] = 1.0; });
    for (std::size_t i = 0; i < m; ++i) a[i][m] = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < m; ++r)
        if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
      if (std::abs(a[p][c]) < 1e-12) return std::nullopt;
      std::swap(a[p], a[c]);
      for (std::size_t r = 0; r < m; ++r) {
        if (r == c) continue;
        const double f = a[r][c] / a[c][c];
        for (std::size_t j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
      }
    }
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = a[i][m] / a[i][i];
    return x;
  };
  auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    if (depth == m) {
      if (auto x = solve_basis()) {
        if (std::all_of(x->begin(), x->end(), [](double v) { return v >= -1e-12; })) {
          double s = 0.0;
          for (double v : *x) s += v;
          if (!best || s < *best) best = s;
        }
      }
      return;
    }
    for (std::size_t j = start; j < k; ++j) {
      pick[depth] = j;
      self(self, depth + 1, j + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

/// Dense 4th-order Runge–Kutta integration of i dψ/dt = H(t) ψ from |0…0⟩,
/// with H built entry by entry from the Hamiltonian definition.
inline std::vector<std::complex<double>> rk4_reference(const Register& reg, const PulseSchedule& pulse,
                                                       const EmulatorConfig& cfg, double dt) {
  const int n = reg.size();
  const std::size_t dim = std::size_t{1} << n;
  const double rabi = cfg.half_rabi ? 0.5 : 1.0;
  std::vector<double> diag_int(dim, 0.0);
  std::vector<int> occ(dim, 0);
  for (std::size_t z = 0; z < dim; ++z) {
    for (int i = 0; i < n; ++i) {
      if (!((z >> i) & 1U)) continue;
      ++occ[z];
      for (int j = i + 1; j < n; ++j)
        if ((z >> j) & 1U) diag_int[z] += cfg.c6 / std::pow(reg.distance(i, j), 6);
    }
  }
  using cvec = std::vector<std::complex<double>>;
  auto deriv = [&](double t, const cvec& psi) {
    const double om = rabi * pulse.omega(t), de = pulse.delta(t);
    cvec out(dim);
    for (std::size_t z = 0; z < dim; ++z) {
      std::complex<double> h = (diag_int[z] - de * occ[z]) * psi[z];
      for (int i = 0; i < n; ++i) h += om * psi[z ^ (std::size_t{1} << i)];
      out[z] = std::complex<double>(0.0, -1.0) * h;
    }
    return out;
  };
  cvec psi(dim);
  psi[0] = 1.0;
  const auto steps = static_cast<long>(std::round(pulse.duration / dt));
  const double h = pulse.duration / static_cast<double>(steps);
  cvec tmp(dim);
  for (long s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * h;
    const auto k1 = deriv(t, psi);
    for (std::size_t z = 0; z < dim; ++z) tmp[z] = psi[z] + 0.5 * h * k1[z];
    const auto k2 = deriv(t + h / 2, tmp);
    for (std::size_t z = 0; z < dim; ++z) tmp[z] = psi[z] + 0.5 * h * k2[z];
    const auto k3 = deriv(t + h / 2, tmp);
    for (std::size_t z = 0; z < dim; ++z) tmp[z] = psi[z] + h * k3[z];
    const auto k4 = deriv(t + h, tmp);
    for (std::size_t z = 0; z < dim; ++z) psi[z] += h / 6.0 * (k1[z] + 2.0 * k2[z] + 2.0 * k3[z] + k4[z]);
  }
  return psi;
}

inline double fidelity(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  std::complex<double> ip = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
  return std::norm(ip);
}

}  // namespace qcbp::oracle
