#include <gtest/gtest.h>

#include "oracles.hpp"
#include "refix/graph.hpp"

using namespace refix;

namespace {

GraphError::Kind error_kind(const GraphData& d) {
  try {
    validate(d);
  } catch (const GraphError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a validation error";
  return GraphError::Kind::bad_size;
}

bool brute_twins(const ColoredGraph& g, Vertex u, Vertex v) {
  if (g.color(u) != g.color(v)) return false;
  for (Vertex w = 0; w < g.size(); ++w) {
    if (w == u || w == v) continue;
    if (g.adjacent(u, w) != g.adjacent(v, w)) return false;
  }
  return true;
}

}  // namespace

TEST(Validate, AcceptsTriangle) {
  EXPECT_NO_THROW(validate({3, {{0, 1}, {1, 2}, {0, 2}}, {0, 0, 0}}));
}

TEST(Validate, ReportsFirstViolation) {
  EXPECT_EQ(error_kind({2, {{0, 0}}, {}}), GraphError::Kind::self_loop);
  EXPECT_EQ(error_kind({2, {{0, 2}}, {}}), GraphError::Kind::dangling_endpoint);
  EXPECT_EQ(error_kind({2, {{0, 1}, {1, 0}}, {}}), GraphError::Kind::duplicate_edge);
  EXPECT_EQ(error_kind({2, {}, {0, 2}}), GraphError::Kind::color_gap);
  EXPECT_EQ(error_kind({2, {}, {0}}), GraphError::Kind::color_count);
}

TEST(ColoredGraphTest, AdjacencyIsSortedAndSymmetric) {
  ColoredGraph g(4, {{2, 0}, {0, 1}, {3, 0}});
  ASSERT_EQ(g.degree(0), 3);
  EXPECT_EQ(std::vector<Vertex>(g.neighbors(0).begin(), g.neighbors(0).end()), (std::vector<Vertex>{1, 2, 3}));
  EXPECT_TRUE(g.adjacent(2, 0));
  EXPECT_FALSE(g.adjacent(1, 2));
  EXPECT_EQ(g.edges().front(), Edge(0, 1));
}

TEST(TwinClasses, Examples) {
  ColoredGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(twin_classes(k4).num_cells(), 1);

  ColoredGraph path(3, {{0, 1}, {1, 2}});
  auto t = twin_classes(path);
  EXPECT_EQ(t.cells(), (std::vector<std::vector<Vertex>>{{0, 2}, {1}}));

  ColoredGraph star(4, {{0, 1}, {0, 2}, {0, 3}}, {1, 0, 0, 0});
  EXPECT_EQ(twin_classes(star).cells(), (std::vector<std::vector<Vertex>>{{0}, {1, 2, 3}}));
}

TEST(TwinClasses, MatchesPairwiseRelationOnRandomGraphs) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto g = oracle::random_graph(rng, n, 0.5, 1 + static_cast<int>(rng() % 2));
    auto t = twin_classes(g);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) {
        bool rel = u == v || brute_twins(g, u, v);
        EXPECT_EQ(rel, t.cell_of(u) == t.cell_of(v)) << "trial " << trial;
      }
    Coloring colors = Coloring::from_colors(g.colors());
    EXPECT_TRUE(t.refines(colors));
  }
}

TEST(TwinClasses, RelationIsAnEquivalence) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto g = oracle::random_graph(rng, n, 0.5);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        for (Vertex c = 0; c < n; ++c) {
          if (a == b || b == c || a == c) continue;
          if (brute_twins(g, a, b) && brute_twins(g, b, c)) EXPECT_TRUE(brute_twins(g, a, c));
        }
  }
}

TEST(BipartiteComplement, Examples) {
  ColoredGraph matched(4, {{0, 2}, {1, 3}});
  std::vector<Vertex> a{0, 1}, b{2, 3};
  auto crossed = bipartite_complement(matched, a, b);
  EXPECT_EQ(crossed.edges(), (std::vector<Edge>{{0, 3}, {1, 2}}));

  ColoredGraph empty(4);
  EXPECT_EQ(bipartite_complement(empty, a, b).num_edges(), 4);

  std::vector<Vertex> overlap{1, 2};
  EXPECT_THROW(bipartite_complement(matched, a, overlap), std::invalid_argument);
}

TEST(BipartiteComplement, InvolutionPreservingColors) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = oracle::random_graph(rng, 8, 0.4, 3);
    std::vector<Vertex> a{0, 1, 2}, b{4, 6};
    auto once = bipartite_complement(g, a, b);
    EXPECT_EQ(once.colors(), g.colors());
    EXPECT_EQ(bipartite_complement(once, a, b), g);
  }
}

TEST(ColoringTest, RejectsNonPartitions) {
  EXPECT_THROW(Coloring::from_cells(3, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(Coloring::from_cells(2, {{0, 1}, {1}}), std::invalid_argument);
  auto c = Coloring::from_cells(3, {{2, 0}, {1}});
  EXPECT_EQ(c.cell(0), (std::vector<Vertex>{0, 2}));
  EXPECT_EQ(c.cell_of(1), 1);
}

TEST(InducedSubgraphTest, RenumbersAndCompactsColors) {
  ColoredGraph g(4, {{0, 1}, {1, 2}, {2, 3}}, {0, 1, 2, 1});
  std::vector<Vertex> keep{3, 2};
  auto sub = induced_subgraph(g, keep);
  EXPECT_EQ(sub.to_original, (std::vector<Vertex>{2, 3}));
  EXPECT_EQ(sub.graph.edges(), (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(sub.graph.colors(), (std::vector<Color>{1, 0}));
}
