#pragma once

// Hybrid column generation: alternate master solves with sampled pricing and
// certify termination with the exact pricer.

#include <span>
#include <vector>

#include "qcbp/pricing.hpp"
#include "qcbp/rmp.hpp"

namespace qcbp {

struct HcgCaps {
  int max_iterations = 50;
};

struct HcgResult {
  RmpModel model;                 // final column pool, in the indexing of the input graph
  RmpSolution rmp;                // solution of the last master solve
  double lp_bound = 0.0;          // == rmp.objective
  double lower_bound = 0.0;       // lp_bound if certified, else the Farley bound
  bool certified = false;
  int iterations = 0;             // master solves
  int quantum_calls = 0;
  long shots_used = 0;
  int exact_pricer_calls = 0;
  std::vector<int> new_sets_per_iteration;
  std::vector<double> objective_trace;
  std::vector<PricingLogRow> log;
};

/// `seed_pool` columns must be independent in `g`; singletons are always added.
inline HcgResult run_hcg(const Graph& g, const std::vector<VertexSet>& seed_pool, Pricer& pricer,
                         const HcgCaps& caps = {}, std::span<const int> root_ids = {}) {
  const double eps = pricer.config().epsilon;
  HcgResult res;
  res.model = init_rmp(g);
  add_columns(res.model, seed_pool, ColumnOrigin::inherited);

  auto positive_weights = [&](const std::vector<double>& duals) {
    std::vector<double> w(duals.size(), 0.0);
    for (std::size_t i = 0; i < duals.size(); ++i)
      if (duals[i] > eps) w[i] = duals[i];
    return w;
  };

  for (;;) {
    res.rmp = solve_rmp(res.model);
    ++res.iterations;
    res.objective_trace.push_back(res.rmp.objective);
    if (res.iterations > caps.max_iterations) break;

    if (pricer.config().sampler != SamplerKind::exact_pricer) {
      auto out = pricer.quantum_price(g, res.rmp.duals, res.model.index, root_ids);
      if (out.sampler_called) {
        ++res.quantum_calls;
        res.shots_used += out.shots;
      }
      std::vector<Column> cols;
      int maximal = 0;
      for (const auto& pc : out.columns) {
        cols.push_back({pc.set, pc.reduced_cost, is_maximal_independent(g, pc.set), ColumnOrigin::quantum});
        maximal += pc.maximal_in_subgraph ? 1 : 0;
      }
      const int added = add_columns(res.model, cols);
      if (out.sampler_called)
        res.log.push_back({res.iterations, out.n_sub, out.shots, out.distinct_bitstrings, added, maximal});
      if (added > 0) {
        res.new_sets_per_iteration.push_back(added);
        continue;
      }
    }

    const auto w = positive_weights(res.rmp.duals);
    const VertexSet best = exact_mwis(g, w);
    ++res.exact_pricer_calls;
    const double value = set_weight(best, w);
    if (value > 1.0 + eps) {
      const int added = add_columns(
          res.model, std::vector<Column>{{best, 1.0 - value, is_maximal_independent(g, best), ColumnOrigin::exact_pricer}});
      if (added == 0) throw LpError("run_hcg: exact pricer returned a column already in the pool");
      res.new_sets_per_iteration.push_back(added);
      continue;
    }
    res.new_sets_per_iteration.push_back(0);
    res.certified = true;
    break;
  }

  res.lp_bound = res.rmp.objective;
  if (res.certified) {
    res.lower_bound = res.lp_bound;
  } else {
    // π / κ is dual feasible for κ = max_S π(S), so Σπ / κ bounds the LP from below.
    const auto w = positive_weights(res.rmp.duals);
    const double kappa = set_weight(exact_mwis(g, w), w);
    ++res.exact_pricer_calls;
    res.lower_bound = kappa > 1.0 ? res.lp_bound / kappa : res.lp_bound;
  }
  return res;
}

}  // namespace qcbp
