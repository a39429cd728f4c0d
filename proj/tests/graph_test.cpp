#include <gtest/gtest.h>

#include <sstream>
#include <unordered_set>

#include "oracles.hpp"
#include "qcbp/graph.hpp"

using namespace qcbp;

TEST(VertexSet, BasicOps) {
  auto s = VertexSet::of({0, 2, 5});
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.first(), 0);
  EXPECT_EQ(s.last(), 5);
  EXPECT_EQ((s - VertexSet::of({2})).members(), (std::vector<int>{0, 5}));
  EXPECT_EQ(VertexSet::full(64).size(), 64);
  EXPECT_EQ(VertexSet{}.last(), -1);
  EXPECT_EQ(to_string(s), "{0,2,5}");
}

TEST(VertexSet, LexOrder) {
  EXPECT_TRUE(lex_less(VertexSet::of({0, 2}), VertexSet::of({1})));
  EXPECT_TRUE(lex_less(VertexSet::of({0}), VertexSet::of({0, 2})));
  EXPECT_FALSE(lex_less(VertexSet::of({0, 2}), VertexSet::of({0, 2})));
  EXPECT_TRUE(lex_less(VertexSet{}, VertexSet::of({3})));
}

TEST(Dimacs, PathGraph) {
  auto g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3");
  EXPECT_EQ(g.n(), 3);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(Dimacs, EdgelessAndComments) {
  auto g = parse_dimacs("c hello\np edge 2 0\n");
  EXPECT_EQ(g.n(), 2);
  EXPECT_EQ(g.edge_count(), 0);
}

TEST(Dimacs, Errors) {
  EXPECT_THROW(parse_dimacs("p edge 2 1\ne 1 3"), GraphError);
  EXPECT_THROW(parse_dimacs("e 1 2"), GraphError);
  EXPECT_THROW(parse_dimacs("p edge 2 1\ne 1 1"), GraphError);
  EXPECT_THROW(parse_dimacs("p foo 2 1"), GraphError);
}

TEST(Dimacs, RoundTrip) {
  auto g = petersen_graph();
  std::ostringstream os;
  write_dimacs(os, g);
  EXPECT_EQ(parse_dimacs(os.str()), g);
}

TEST(Independence, Examples) {
  auto p3 = path_graph(3);
  EXPECT_TRUE(is_independent(p3, VertexSet::of({0, 2})));
  EXPECT_FALSE(is_independent(p3, VertexSet::of({0, 1})));
  EXPECT_TRUE(is_independent(p3, VertexSet{}));
  EXPECT_TRUE(is_maximal_independent(p3, VertexSet::of({0, 2})));
  EXPECT_FALSE(is_maximal_independent(p3, VertexSet::of({0})));
  EXPECT_TRUE(is_maximal_independent(Graph(3), VertexSet::of({0, 1, 2})));
}

TEST(Independence, AgreesWithPairCheck) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = oracle::random_graph(8, 0.4, seed);
    auto maximal = oracle::all_maximal_independent_sets(g);
    std::unordered_set<VertexSet, VertexSetHash> mset(maximal.begin(), maximal.end());
    for (std::uint64_t m = 0; m < 256; ++m) {
      VertexSet s(m);
      EXPECT_EQ(is_independent(g, s), oracle::independent_by_pairs(g, m));
      if (m) {
        EXPECT_EQ(is_maximal_independent(g, s), mset.count(s) == 1);
      }
    }
  }
}

TEST(InducedSubgraph, Examples) {
  auto p3 = path_graph(3);
  auto sub = induced_subgraph(p3, VertexSet::of({0, 2}));
  EXPECT_EQ(sub.graph.n(), 2);
  EXPECT_EQ(sub.graph.edge_count(), 0);
  EXPECT_EQ(sub.new_to_old, (std::vector<int>{0, 2}));

  auto k3 = induced_subgraph(complete_graph(4), VertexSet::of({0, 1, 3}));
  EXPECT_EQ(k3.graph, complete_graph(3));

  auto g = petersen_graph();
  auto id = induced_subgraph(g, g.vertices());
  EXPECT_EQ(id.graph, g);
  for (int v = 0; v < g.n(); ++v) EXPECT_EQ(id.new_to_old[static_cast<std::size_t>(v)], v);
  EXPECT_THROW(induced_subgraph(g, VertexSet{}), GraphError);
}

TEST(InducedSubgraph, MapsSetsBothWays) {
  auto g = petersen_graph();
  auto keep = VertexSet::of({1, 3, 4, 7, 9});
  auto sub = induced_subgraph(g, keep);
  for (auto [u, v] : sub.graph.edges())
    EXPECT_TRUE(g.adjacent(sub.new_to_old[static_cast<std::size_t>(u)], sub.new_to_old[static_cast<std::size_t>(v)]));
  EXPECT_EQ(sub.graph.edge_count(), g.edge_count_within(keep));
  auto s = VertexSet::of({3, 9});
  EXPECT_EQ(sub.to_old(sub.to_new(s)), s);
}

TEST(Builders, KnownCounts) {
  EXPECT_EQ(complete_graph(5).edge_count(), 10);
  EXPECT_EQ(cycle_graph(5).edge_count(), 5);
  EXPECT_EQ(petersen_graph().edge_count(), 15);
  for (int v = 0; v < 10; ++v) EXPECT_EQ(petersen_graph().degree(v), 3);
  Graph g(3);
  EXPECT_THROW(g.add_edge(0, 0), GraphError);
  EXPECT_THROW(g.add_edge(0, 3), GraphError);
}

TEST(RandomUd, SingleVertex) {
  auto ud = random_ud_graph(1, 3, 10.0, 40.0);
  EXPECT_EQ(ud.graph.n(), 1);
  EXPECT_EQ(ud.graph.edge_count(), 0);
}

TEST(RandomUd, Deterministic) {
  auto a = random_ud_graph(12, 7, 10.0, 40.0);
  auto b = random_ud_graph(12, 7, 10.0, 40.0);
  EXPECT_EQ(a.graph, b.graph);
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    EXPECT_EQ(a.positions[i].x, b.positions[i].x);
    EXPECT_EQ(a.positions[i].y, b.positions[i].y);
  }
}

TEST(RandomUd, EdgesMatchDistances) {
  auto ud = random_ud_graph(12, 7, 10.0, 40.0);
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) {
      const auto& p = ud.positions[static_cast<std::size_t>(i)];
      const auto& q = ud.positions[static_cast<std::size_t>(j)];
      const double d = std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y));
      EXPECT_EQ(ud.graph.adjacent(i, j), d <= 10.0) << i << "," << j;
      EXPECT_GE(d, kMinAtomSpacing);
    }
}

TEST(Perturb, FlipsOneToThreePairs) {
  auto g = cycle_graph(8);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto h = perturb_graph(g, seed);
    int diff = 0;
    for (int u = 0; u < 8; ++u)
      for (int v = u + 1; v < 8; ++v) diff += g.adjacent(u, v) != h.adjacent(u, v);
    EXPECT_GE(diff, 1);
    EXPECT_LE(diff, 3);
    EXPECT_EQ(perturb_graph(g, seed), h);
  }
}

TEST(PositionsCsv, RoundTrip) {
  auto ud = random_ud_graph(6, 11, 10.0, 30.0);
  std::ostringstream os;
  write_positions_csv(os, ud.positions);
  std::istringstream is(os.str());
  auto pts = read_positions_csv(is);
  ASSERT_EQ(pts.size(), ud.positions.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(pts[i].x, ud.positions[i].x);
    EXPECT_EQ(pts[i].y, ud.positions[i].y);
  }
}
