#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcbp/pricing.hpp"

using namespace qcbp;

namespace {

std::vector<double> random_weights(int n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = u(rng);
  return w;
}

void expect_sound(const Graph& g, const std::vector<double>& duals,
                  const std::unordered_set<VertexSet, VertexSetHash>& pool, const PricingOutcome& out) {
  std::unordered_set<VertexSet, VertexSetHash> seen;
  for (const auto& c : out.columns) {
    EXPECT_TRUE(oracle::independent_by_pairs(g, c.set.bits())) << to_string(c.set);
    EXPECT_LT(reduced_cost(c.set, duals), -kPricingEpsilon);
    EXPECT_NEAR(c.reduced_cost, reduced_cost(c.set, duals), 1e-12);
    EXPECT_EQ(pool.count(c.set), 0U);
    EXPECT_TRUE(seen.insert(c.set).second);
  }
}

}  // namespace

TEST(ReducedCost, Examples) {
  std::vector<double> ones{1, 1, 1};
  EXPECT_DOUBLE_EQ(reduced_cost(VertexSet::of({0, 2}), ones), -1.0);
  EXPECT_DOUBLE_EQ(reduced_cost(VertexSet{}, ones), 1.0);
  std::vector<double> pi{0.6, 0.3, 0.6};
  EXPECT_NEAR(reduced_cost(VertexSet::of({0, 2}), pi), -0.2, 1e-15);
}

TEST(ExactMwis, Examples) {
  EXPECT_EQ(exact_mwis(path_graph(3), std::vector<double>{1, 1, 1}), VertexSet::of({0, 2}));
  EXPECT_EQ(exact_mwis(Graph(1), std::vector<double>{5}), VertexSet::of({0}));
  EXPECT_EQ(exact_mwis(complete_graph(3), std::vector<double>{0.2, 0.9, 0.5}), VertexSet::of({1}));
  EXPECT_EQ(exact_mwis(path_graph(3), std::vector<double>{0, 0, 0}), VertexSet{});
  EXPECT_THROW(exact_mwis(path_graph(3), std::vector<double>{1, 1}), std::invalid_argument);
}

TEST(ExactMwis, TiesResolveLexicographically) {
  // C4: {0,2} and {1,3} tie at weight 2.
  EXPECT_EQ(exact_mwis(cycle_graph(4), std::vector<double>{1, 1, 1, 1}), VertexSet::of({0, 2}));
  // P3 with equal weights on {1} vs {0}: both weight 1, but {0,2} dominates.
  EXPECT_EQ(exact_mwis(path_graph(3), std::vector<double>{0.5, 1.0, 0.5}), VertexSet::of({0, 2}));
}

TEST(ExactMwis, MatchesBruteForce) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + trial % 9;
    auto g = oracle::random_graph(n, 0.3 + 0.05 * (trial % 5), static_cast<std::uint64_t>(trial));
    auto w = random_weights(n, rng, -0.2, 1.0);
    const auto got = exact_mwis(g, w);
    const auto ref = oracle::brute_force_mwis(g, w);
    EXPECT_TRUE(is_independent(g, got));
    EXPECT_NEAR(set_weight(got, w), ref.weight, 1e-12);
    EXPECT_EQ(got, ref.set) << "trial " << trial;
  }
}

TEST(Sampler, Parse) {
  EXPECT_EQ(parse_sampler("emulated_qaa"), SamplerKind::emulated_qaa);
  EXPECT_EQ(parse_sampler("classical_stochastic"), SamplerKind::classical_stochastic);
  EXPECT_EQ(parse_sampler("exact_pricer"), SamplerKind::exact_pricer);
  EXPECT_FALSE(parse_sampler("qaoa").has_value());
  for (auto k : {SamplerKind::emulated_qaa, SamplerKind::classical_stochastic, SamplerKind::exact_pricer})
    EXPECT_EQ(parse_sampler(to_string(k)), k);
}

TEST(QuantumPrice, ZeroDualsSkipSampler) {
  Pricer p(PricerConfig{});
  auto g = path_graph(3);
  std::vector<double> zero(3, 0.0);
  auto out = p.quantum_price(g, zero, {});
  EXPECT_TRUE(out.columns.empty());
  EXPECT_EQ(out.shots, 0);
  EXPECT_FALSE(out.sampler_called);
  EXPECT_EQ(out.n_sub, 0);
}

TEST(QuantumPrice, SingleVertexSkipsSampler) {
  Pricer p(PricerConfig{});
  std::vector<double> d{1.0, 0.0, 0.0};
  auto out = p.quantum_price(path_graph(3), d, {});
  EXPECT_FALSE(out.sampler_called);
  EXPECT_EQ(out.n_sub, 1);
}

TEST(QuantumPrice, EmulatedPathThree) {
  PricerConfig cfg;
  cfg.seed = 3;
  Pricer p(cfg);
  auto g = path_graph(3);
  std::vector<double> d{1, 1, 1};
  auto m = std::unordered_set<VertexSet, VertexSetHash>{VertexSet::of({0}), VertexSet::of({1}), VertexSet::of({2})};
  auto out = p.quantum_price(g, d, m);
  EXPECT_TRUE(out.sampler_called);
  EXPECT_EQ(out.shots, 200);
  EXPECT_EQ(out.n_sub, 3);
  expect_sound(g, d, m, out);
  // The adiabatic sweep on P3 should land on the maximum independent set.
  bool found = false;
  for (const auto& c : out.columns) found = found || c.set == VertexSet::of({0, 2});
  EXPECT_TRUE(found);
  EXPECT_EQ(p.embeddings_computed(), 1U);
  p.quantum_price(g, d, m);
  EXPECT_EQ(p.embeddings_computed(), 1U);
  EXPECT_EQ(p.cache_size(), 1U);
}

TEST(QuantumPrice, RootIdsKeyTheCache) {
  Pricer p(PricerConfig{});
  auto g = path_graph(3);
  std::vector<double> d{1, 1, 1};
  std::vector<int> ids_a{0, 1, 2}, ids_b{4, 5, 6};
  p.quantum_price(g, d, {}, ids_a);
  p.quantum_price(g, d, {}, ids_b);
  EXPECT_EQ(p.cache_size(), 2U);
}

TEST(QuantumPrice, SoundOnRandomCases) {
  std::mt19937_64 rng(11);
  for (auto kind : {SamplerKind::classical_stochastic, SamplerKind::emulated_qaa}) {
    PricerConfig cfg;
    cfg.sampler = kind;
    cfg.emulator.shots = 50;
    cfg.seed = 17;
    Pricer p(cfg);
    const int trials = kind == SamplerKind::emulated_qaa ? 6 : 200;
    for (int t = 0; t < trials; ++t) {
      const int n = kind == SamplerKind::emulated_qaa ? 5 : 4 + t % 8;
      auto g = oracle::random_graph(n, 0.35, static_cast<std::uint64_t>(t) + 1000);
      auto d = random_weights(n, rng, -0.3, 1.0);
      std::unordered_set<VertexSet, VertexSetHash> pool;
      for (auto s : oracle::random_independent_sets(g, 3, static_cast<std::uint64_t>(t))) pool.insert(s);
      auto out = p.quantum_price(g, d, pool);
      expect_sound(g, d, pool, out);
    }
  }
}

TEST(QuantumPrice, ExtendToMaximal) {
  PricerConfig cfg;
  cfg.sampler = SamplerKind::classical_stochastic;
  cfg.extend_to_maximal = true;
  cfg.emulator.shots = 30;
  Pricer p(cfg);
  auto g = petersen_graph();
  std::vector<double> d(10, 0.5);
  auto out = p.quantum_price(g, d, {});
  ASSERT_FALSE(out.columns.empty());
  for (const auto& c : out.columns) {
    EXPECT_TRUE(is_maximal_independent(g, c.set));
    EXPECT_TRUE(c.maximal_in_subgraph);
  }
}

TEST(QuantumPrice, ExactPricerHasNoSampler) {
  PricerConfig cfg;
  cfg.sampler = SamplerKind::exact_pricer;
  Pricer p(cfg);
  std::vector<double> d{1, 1, 1};
  EXPECT_THROW(p.quantum_price(path_graph(3), d, {}), std::logic_error);
}

TEST(StochasticSamples, AreMaximal) {
  auto g = oracle::random_graph(9, 0.4, 5);
  auto s = Pricer::stochastic_samples(g, 100, 9);
  EXPECT_EQ(s.total, 100);
  for (const auto& [bits, c] : s.counts) EXPECT_TRUE(is_maximal_independent(g, bitstring_to_set(bits)));
}

TEST(MixSeed, Distinct) {
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
  EXPECT_EQ(mix_seed(5, 6), mix_seed(5, 6));
}
