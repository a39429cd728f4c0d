#pragma once

// Branch-and-price over maximal independent sets: greedy primal heuristic,
// branching, node bounds and scores, and the best-first search driver.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qcbp/bounds.hpp"
#include "qcbp/graph.hpp"
#include "qcbp/hcg.hpp"
#include "qcbp/pricing.hpp"

namespace qcbp {

struct Coloring {
  std::vector<VertexSet> classes;
  int colors_used() const { return static_cast<int>(classes.size()); }
};

/// Classes pairwise disjoint, independent in `g`, and covering exactly `cover`.
inline bool is_valid_coloring(const Graph& g, const Coloring& c, VertexSet cover) {
  VertexSet seen;
  for (auto s : c.classes) {
    if (s.empty() || s.intersects(seen) || !is_independent(g, s)) return false;
    seen |= s;
  }
  return seen == cover;
}

inline bool is_valid_coloring(const Graph& g, const Coloring& c) { return is_valid_coloring(g, c, g.vertices()); }

/// Greedy coloring of `residual` from pooled independent sets: repeatedly take
/// the highest-degree uncolored vertex (degree within `residual`, lowest index
/// on ties) and commit the pool set containing it with the most uncolored
/// members (lexicographically smallest surviving set on ties).
inline Coloring primal_heuristic(const Graph& g, VertexSet residual, const std::vector<VertexSet>& pool) {
  std::vector<int> order = residual.members();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return (g.neighbors(a) & residual).size() > (g.neighbors(b) & residual).size();
  });
  Coloring out;
  VertexSet uncolored = residual;
  for (int v : order) {
    if (!uncolored.contains(v)) continue;
    VertexSet best = VertexSet::single(v);
    for (auto s : pool) {
      if (!s.contains(v)) continue;
      const VertexSet surviving = s & uncolored;
      if (surviving.size() > best.size() || (surviving.size() == best.size() && lex_less(surviving, best)))
        best = surviving;
    }
    out.classes.push_back(best);
    uncolored -= best;
  }
  return out;
}

inline Coloring primal_heuristic(const Graph& g, const std::vector<VertexSet>& pool) {
  return primal_heuristic(g, g.vertices(), pool);
}

struct BBNode {
  VertexSet residual;
  int depth = 0;
  std::vector<VertexSet> fixed_classes;
  int lb = 0;
  int local_ub = 0;
  double score = 0.0;
  long id = 0;  // generation order
};

/// Children from pool columns that are maximal independent sets of the
/// residual. Duplicate residuals within the expansion or already present in
/// `visited` are dropped.
inline std::vector<BBNode> branch(const Graph& g, const BBNode& node, const std::vector<VertexSet>& pool,
                                  const std::unordered_set<VertexSet, VertexSetHash>* visited = nullptr) {
  std::vector<BBNode> children;
  std::unordered_set<VertexSet, VertexSetHash> seen;
  for (auto s : pool) {
    if (s.empty() || !s.is_subset_of(node.residual)) continue;
    if (!is_independent(g, s) || !is_maximal_independent(g, s, node.residual)) continue;
    const VertexSet rest = node.residual - s;
    if (!seen.insert(rest).second) continue;
    if (visited && visited->count(rest)) continue;
    BBNode child;
    child.residual = rest;
    child.depth = node.depth + 1;
    child.fixed_classes = node.fixed_classes;
    child.fixed_classes.push_back(s);
    child.lb = node.lb;
    children.push_back(std::move(child));
  }
  return children;
}

/// All maximal independent sets of `within` that contain `v`, up to `limit`
/// (Bron–Kerbosch with pivoting on the complement). Returns false if the
/// limit cut the enumeration short.
inline bool maximal_independent_sets_containing(const Graph& g, VertexSet within, int v, std::size_t limit,
                                                std::vector<VertexSet>& out) {
  const VertexSet free = within - g.neighbors(v) - VertexSet::single(v);
  bool complete = true;
  auto non_nbrs = [&](int u) { return free - g.neighbors(u) - VertexSet::single(u); };
  auto recurse = [&](auto&& self, VertexSet r, VertexSet p, VertexSet x) -> void {
    if (!complete) return;
    if (p.empty() && x.empty()) {
      if (out.size() >= limit) { complete = false; return; }
      out.push_back(r);
      return;
    }
    int pivot = -1, best = -1;
    (p | x).for_each([&](int u) {
      const int c = (p & non_nbrs(u)).size();
      if (c > best) { best = c; pivot = u; }
    });
    const VertexSet branch_on = p - non_nbrs(pivot);
    branch_on.for_each([&](int u) {
      VertexSet ru = r;
      ru.insert(u);
      self(self, ru, p & non_nbrs(u), x & non_nbrs(u));
      p.erase(u);
      x.insert(u);
    });
  };
  recurse(recurse, VertexSet::single(v), free, VertexSet{});
  return complete;
}

inline int node_lb(int depth, double lp_bound, const SpectralBounds& spectral) {
  return depth + std::max(static_cast<int>(std::ceil(lp_bound - 1e-6)), spectral.combined_lb);
}

inline double node_score(int local_ub, int residual_edges) {
  return static_cast<double>(local_ub) * static_cast<double>(residual_edges);
}

struct SolveConfig {
  int node_budget = 1000;            // explored-node cap; <= 0 means unlimited
  HcgCaps hcg;
  bool branch_and_bound = true;      // false: root column generation + heuristic only
  bool complete_branching = true;    // add non-pool maximal sets so exhaustion is a proof; false: pool columns only
  std::size_t mis_enumeration_limit = 20000;
};

struct SolveStats {
  long nodes_generated = 0;
  long nodes_explored = 0;
  long nodes_pruned = 0;
  long nodes_open = 0;
  long shots_total = 0;
  int quantum_calls = 0;
  int ilp_calls = 0;
  int hcg_iterations = 0;
  int root_lb = 0;
  double root_lp = 0.0;
  bool root_certified = false;
  int global_lb = 0;
  bool branching_complete = true;
  double wall_ms = 0.0;
  std::vector<int> ub_trace;
  std::vector<int> lb_trace;
};

struct NodeLogRow {
  long node = 0;
  PricingLogRow row;
};

struct SolveResult {
  Coloring coloring;
  int chi_hat = 0;
  bool proven_optimal = false;
  SolveStats stats;
  std::vector<NodeLogRow> log;
};

namespace detail {

struct ScoreOrder {
  const std::vector<BBNode>* nodes;
  bool operator()(long a, long b) const {
    const auto& x = (*nodes)[static_cast<std::size_t>(a)];
    const auto& y = (*nodes)[static_cast<std::size_t>(b)];
    if (x.score != y.score) return x.score < y.score;
    return x.id > y.id;
  }
};

}  // namespace detail

/// Best-first branch-and-price. The root is always explored; the search stops
/// when the incumbent meets the root bound, the open list empties, or the
/// explored-node budget is spent.
inline SolveResult solve_qcbp(const Graph& g, const SolveConfig& cfg, Pricer& pricer) {
  if (g.n() < 1) throw GraphError("solve_qcbp: graph has no vertices");
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult res;
  auto& st = res.stats;

  std::vector<VertexSet> global_pool;
  std::unordered_set<VertexSet, VertexSetHash> global_index;
  auto remember = [&](VertexSet s) {
    if (global_index.insert(s).second) global_pool.push_back(s);
  };

  int ub = g.n() + 1;
  auto offer = [&](const std::vector<VertexSet>& fixed, const Coloring& rest) {
    const int colors = static_cast<int>(fixed.size()) + rest.colors_used();
    if (colors >= ub) return;
    Coloring c;
    c.classes = fixed;
    c.classes.insert(c.classes.end(), rest.classes.begin(), rest.classes.end());
    if (!is_valid_coloring(g, c)) throw std::logic_error("solve_qcbp: heuristic produced an invalid coloring");
    res.coloring = std::move(c);
    ub = colors;
    st.ub_trace.push_back(ub);
  };

  // Explores a node: column generation on its residual, bound, heuristic.
  // Returns the node-local pool (root indexing).
  auto explore = [&](BBNode& node) {
    ++st.nodes_explored;
    const auto sub = induced_subgraph(g, node.residual);
    std::vector<VertexSet> seed;
    {
      std::unordered_set<VertexSet, VertexSetHash> dedup;
      for (auto s : global_pool) {
        const VertexSet local = sub.to_new(s);
        if (local.size() >= 2 && dedup.insert(local).second) seed.push_back(local);
      }
    }
    auto h = run_hcg(sub.graph, seed, pricer, cfg.hcg, sub.new_to_old);
    st.shots_total += h.shots_used;
    st.quantum_calls += h.quantum_calls;
    st.ilp_calls += h.exact_pricer_calls;
    st.hcg_iterations += h.iterations;
    for (const auto& row : h.log) res.log.push_back({node.id, row});

    std::vector<VertexSet> local_pool;
    local_pool.reserve(h.model.columns.size());
    for (const auto& c : h.model.columns) {
      local_pool.push_back(sub.to_old(c.set));
      remember(local_pool.back());
    }
    const auto spectral = spectral_lb(sub.graph);
    node.lb = std::max(node.lb, node_lb(node.depth, h.lower_bound, spectral));
    if (node.depth == 0) {
      st.root_lp = h.lp_bound;
      st.root_certified = h.certified;
    }
    const auto local = primal_heuristic(g, node.residual, local_pool);
    node.local_ub = local.colors_used();
    offer(node.fixed_classes, local);
    return local_pool;
  };

  std::vector<BBNode> nodes;
  std::unordered_map<VertexSet, long, VertexSetHash> key_to_node;
  std::unordered_set<VertexSet, VertexSetHash> visited;
  std::vector<char> explored_flag;
  std::priority_queue<long, std::vector<long>, detail::ScoreOrder> open(detail::ScoreOrder{&nodes});

  BBNode root;
  root.residual = g.vertices();
  nodes.push_back(root);
  explored_flag.push_back(0);
  visited.insert(root.residual);
  key_to_node[root.residual] = 0;
  ++st.nodes_generated;

  auto root_pool = explore(nodes[0]);
  explored_flag[0] = 1;
  st.root_lb = nodes[0].lb;
  st.global_lb = st.root_lb;
  st.lb_trace.push_back(st.global_lb);

  auto expand = [&](long parent_id, const std::vector<VertexSet>& pool) {
    const BBNode parent = nodes[static_cast<std::size_t>(parent_id)];
    auto children = branch(g, parent, pool, nullptr);
    {
      // Exhaustion proves optimality only if the children cover every maximal
      // set through one vertex: highest residual degree, lowest index on ties.
      int v = -1, best = -1;
      parent.residual.for_each([&](int u) {
        const int d = (g.neighbors(u) & parent.residual).size();
        if (d > best) { best = d; v = u; }
      });
      std::vector<VertexSet> all;
      const bool enumerated = maximal_independent_sets_containing(g, parent.residual, v, cfg.mis_enumeration_limit, all);
      std::unordered_set<VertexSet, VertexSetHash> have;
      for (const auto& c : children) have.insert(c.fixed_classes.back());
      std::vector<VertexSet> missing;
      for (auto s : all)
        if (!have.count(s)) missing.push_back(s);
      if (cfg.complete_branching && enumerated) {
        auto extra = branch(g, parent, missing, nullptr);
        for (auto& c : extra) children.push_back(std::move(c));
      } else if (!missing.empty() || !enumerated) {
        st.branching_complete = false;
      }
    }
    for (auto& child : children) {
      ++st.nodes_generated;
      if (auto it = key_to_node.find(child.residual); it != key_to_node.end()) {
        // Same residual reached again: keep the shallower colouring prefix if
        // the original is still waiting in the open list.
        auto& orig = nodes[static_cast<std::size_t>(it->second)];
        if (child.depth < orig.depth) {
          if (!explored_flag[static_cast<std::size_t>(it->second)]) {
            orig.lb = std::max(child.lb, orig.lb - (orig.depth - child.depth));
            orig.depth = child.depth;
            orig.fixed_classes = child.fixed_classes;
          } else {
            st.branching_complete = false;
          }
        }
        ++st.nodes_pruned;
        continue;
      }
      child.id = static_cast<long>(nodes.size());
      key_to_node[child.residual] = child.id;
      visited.insert(child.residual);
      if (child.residual.empty()) {
        offer(child.fixed_classes, Coloring{});
        nodes.push_back(std::move(child));
        explored_flag.push_back(1);
        ++st.nodes_pruned;
        continue;
      }
      const auto sub = induced_subgraph(g, child.residual);
      child.lb = std::max(child.lb, child.depth + spectral_lb(sub.graph).combined_lb);
      const auto local = primal_heuristic(g, child.residual, pool);
      child.local_ub = local.colors_used();
      child.score = node_score(child.local_ub, sub.graph.edge_count());
      offer(child.fixed_classes, local);
      nodes.push_back(std::move(child));
      explored_flag.push_back(0);
      open.push(nodes.back().id);
    }
  };

  if (cfg.branch_and_bound && ub > st.global_lb) expand(0, root_pool);

  while (cfg.branch_and_bound && !open.empty() && ub > st.global_lb) {
    if (cfg.node_budget > 0 && st.nodes_explored >= cfg.node_budget) break;
    const long id = open.top();
    open.pop();
    auto& node = nodes[static_cast<std::size_t>(id)];
    if (node.lb >= ub) {
      ++st.nodes_pruned;
      explored_flag[static_cast<std::size_t>(id)] = 1;
      continue;
    }
    explored_flag[static_cast<std::size_t>(id)] = 1;
    auto pool = explore(node);
    const BBNode snapshot = node;
    if (snapshot.lb < ub) expand(id, pool);
  }

  st.nodes_open = static_cast<long>(open.size());
  const bool exhausted = cfg.branch_and_bound && open.empty() && st.branching_complete;
  if (exhausted) st.global_lb = ub;
  st.lb_trace.push_back(st.global_lb);
  res.chi_hat = ub;
  res.proven_optimal = ub <= st.global_lb;
  st.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace qcbp
