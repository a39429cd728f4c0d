#pragma once

// Maximum-weight independent set pricing: exact branch-and-bound and a
// sampling pricer backed by the Rydberg emulator (or a classical stochastic
// stand-in), filtered by reduced cost.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qcbp/embedding.hpp"
#include "qcbp/emulator.hpp"
#include "qcbp/graph.hpp"
#include "qcbp/rmp.hpp"

namespace qcbp {

using DualVector = std::vector<double>;

inline constexpr double kPricingEpsilon = 1e-6;

struct PricedColumn {
  VertexSet set;
  double reduced_cost = 0.0;
  bool maximal_in_subgraph = false;
};

inline double set_weight(VertexSet s, std::span<const double> w) {
  double sum = 0.0;
  s.for_each([&](int i) { sum += w[static_cast<std::size_t>(i)]; });
  return sum;
}

/// 1 - Σ_{i∈s} π_i; a column improves the master iff this is below -ε.
inline double reduced_cost(VertexSet s, std::span<const double> duals) { return 1.0 - set_weight(s, duals); }

namespace detail {

struct MwisSearch {
  const Graph& g;
  std::span<const double> w;
  VertexSet best;
  double best_weight = 0.0;
  static constexpr double kTie = 1e-12;

  // `cand` is kept in descending-weight order implicitly: we always branch on
  // its heaviest member.
  void run(VertexSet chosen, double weight, VertexSet cand) {
    if (cand.empty()) {
      if (weight > best_weight + kTie || (weight >= best_weight - kTie && lex_less(chosen, best))) {
        best = chosen;
        best_weight = weight;
      }
      return;
    }
    if (weight + set_weight(cand, w) < best_weight - kTie) return;
    int v = -1;
    cand.for_each([&](int u) {
      if (v < 0 || w[static_cast<std::size_t>(u)] > w[static_cast<std::size_t>(v)]) v = u;
    });
    VertexSet with = chosen;
    with.insert(v);
    run(with, weight + w[static_cast<std::size_t>(v)], cand - g.neighbors(v) - VertexSet::single(v));
    run(chosen, weight, cand - VertexSet::single(v));
  }
};

}  // namespace detail

/// Exact maximum-weight independent set; vertices with non-positive weight are
/// dropped first. Ties resolve to the lexicographically smallest set.
inline VertexSet exact_mwis(const Graph& g, std::span<const double> w) {
  if (static_cast<int>(w.size()) != g.n()) throw std::invalid_argument("exact_mwis: weight vector size mismatch");
  VertexSet positive;
  for (int v = 0; v < g.n(); ++v)
    if (w[static_cast<std::size_t>(v)] > 0.0) positive.insert(v);
  detail::MwisSearch search{g, w, {}, 0.0};
  search.run({}, 0.0, positive);
  return search.best;
}

enum class SamplerKind { emulated_qaa, classical_stochastic, exact_pricer };

inline const char* to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::emulated_qaa: return "emulated_qaa";
    case SamplerKind::classical_stochastic: return "classical_stochastic";
    case SamplerKind::exact_pricer: return "exact_pricer";
  }
  return "?";
}

inline std::optional<SamplerKind> parse_sampler(const std::string& s) {
  if (s == "emulated_qaa") return SamplerKind::emulated_qaa;
  if (s == "classical_stochastic") return SamplerKind::classical_stochastic;
  if (s == "exact_pricer") return SamplerKind::exact_pricer;
  return std::nullopt;
}

struct PricerConfig {
  SamplerKind sampler = SamplerKind::emulated_qaa;
  EmulatorConfig emulator;
  EmbeddingParams embedding;
  double epsilon = kPricingEpsilon;
  bool extend_to_maximal = false;
  std::uint64_t seed = 0;
};

/// One row of the per-iteration pricing log.
struct PricingLogRow {
  int iteration = 0;
  int n_sub = 0;
  int shots = 0;
  int distinct_bitstrings = 0;
  int improving = 0;  // new improving columns emitted
  int maximal = 0;    // of those, maximal in the priced subgraph
};

struct PricingOutcome {
  std::vector<PricedColumn> columns;  // indices of the graph passed in
  int n_sub = 0;
  int shots = 0;
  int distinct_bitstrings = 0;
  bool sampler_called = false;
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over a combined word
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Sampling pricer. Registers are cached per root vertex set; the cache is
/// safe for concurrent readers with exclusive inserts.
class Pricer {
 public:
  explicit Pricer(PricerConfig cfg) : cfg_(std::move(cfg)) { cfg_.emulator.validate(); }

  const PricerConfig& config() const { return cfg_; }
  std::size_t cache_size() const {
    std::shared_lock lock(cache_mutex_);
    return cache_.size();
  }
  std::uint64_t embeddings_computed() const { return embeddings_computed_.load(); }

  /// Samples the subgraph of `g` on vertices with π > ε and returns the
  /// distinct samples that are independent in `g`, improving and not in
  /// `pool`. `root_ids[v]` names vertex v of `g` in the root graph (identity
  /// when empty) and keys the embedding cache.
  PricingOutcome quantum_price(const Graph& g, std::span<const double> duals,
                               const std::unordered_set<VertexSet, VertexSetHash>& pool,
                               std::span<const int> root_ids = {}) {
    if (static_cast<int>(duals.size()) != g.n()) throw std::invalid_argument("quantum_price: dual size mismatch");
    PricingOutcome out;
    VertexSet keep;
    for (int v = 0; v < g.n(); ++v)
      if (duals[static_cast<std::size_t>(v)] > cfg_.epsilon) keep.insert(v);
    out.n_sub = keep.size();
    // A lone vertex can only yield its singleton, which the pool always holds.
    if (keep.size() < 2) return out;

    const auto sub = induced_subgraph(g, keep);
    const std::uint64_t call = calls_.fetch_add(1);
    const std::uint64_t call_seed = mix_seed(cfg_.seed, call);
    SampleSet samples;
    switch (cfg_.sampler) {
      case SamplerKind::emulated_qaa: {
        VertexSet key;
        keep.for_each([&](int v) { key.insert(root_ids.empty() ? v : root_ids[static_cast<std::size_t>(v)]); });
        const Register reg = register_for(key, sub.graph);
        const auto report = audit(sub.graph, reg, cfg_.embedding.ud_radius);
        const auto pulse = build_adiabatic_pulse(report, cfg_.emulator);
        const auto psi = evolve(reg, pulse, cfg_.emulator);
        samples = sample(psi, cfg_.emulator.shots, call_seed);
        break;
      }
      case SamplerKind::classical_stochastic:
        samples = stochastic_samples(sub.graph, cfg_.emulator.shots, call_seed);
        break;
      case SamplerKind::exact_pricer:
        throw std::logic_error("quantum_price: exact_pricer has no sampling path");
    }
    out.sampler_called = true;
    out.shots = samples.total;
    out.distinct_bitstrings = static_cast<int>(samples.counts.size());

    std::unordered_set<VertexSet, VertexSetHash> emitted;
    std::vector<double> sub_w(static_cast<std::size_t>(sub.graph.n()));
    for (int i = 0; i < sub.graph.n(); ++i)
      sub_w[static_cast<std::size_t>(i)] = duals[static_cast<std::size_t>(sub.new_to_old[static_cast<std::size_t>(i)])];
    for (const auto& [bits, count] : samples.counts) {
      VertexSet local = bitstring_to_set(bits);
      if (local.empty() || !is_independent(sub.graph, local)) continue;
      if (cfg_.extend_to_maximal) local = extend_greedily(sub.graph, local, sub_w);
      const VertexSet s = sub.to_old(local);
      const double rc = reduced_cost(s, duals);
      if (!(rc < -cfg_.epsilon) || pool.count(s) || !emitted.insert(s).second) continue;
      out.columns.push_back({s, rc, is_maximal_independent(sub.graph, local)});
    }
    return out;
  }

  /// Random-order greedy maximal independent sets, one per shot.
  static SampleSet stochastic_samples(const Graph& g, int shots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(g.n()));
    SampleSet out;
    out.total = shots;
    for (int s = 0; s < shots; ++s) {
      for (int i = 0; i < g.n(); ++i) order[static_cast<std::size_t>(i)] = i;
      std::shuffle(order.begin(), order.end(), rng);
      VertexSet set, blocked;
      for (int v : order) {
        if (blocked.contains(v)) continue;
        set.insert(v);
        blocked |= g.neighbors(v);
        blocked.insert(v);
      }
      ++out.counts[basis_to_bitstring(set.bits(), g.n())];
    }
    return out;
  }

  static VertexSet extend_greedily(const Graph& g, VertexSet s, std::span<const double> w) {
    std::vector<int> order = (g.vertices() - s).members();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return w[static_cast<std::size_t>(a)] > w[static_cast<std::size_t>(b)];
    });
    for (int v : order)
      if (!g.neighbors(v).intersects(s)) s.insert(v);
    return s;
  }

 private:
  Register register_for(VertexSet key, const Graph& sub) {
    {
      std::shared_lock lock(cache_mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    Register reg = embed(sub, cfg_.embedding, mix_seed(cfg_.seed ^ 0x5eedULL, key.bits()));
    ++embeddings_computed_;
    std::unique_lock lock(cache_mutex_);
    return cache_.try_emplace(key, std::move(reg)).first->second;
  }

  PricerConfig cfg_;
  mutable std::shared_mutex cache_mutex_;
  std::unordered_map<VertexSet, Register, VertexSetHash> cache_;
  std::atomic<std::uint64_t> calls_{0};
  std::atomic<std::uint64_t> embeddings_computed_{0};
};

}  // namespace qcbp
