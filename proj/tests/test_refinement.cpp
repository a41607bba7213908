#include <gtest/gtest.h>

#include "oracles.hpp"
#include "refix/partition.hpp"
#include "refix/refinement.hpp"

using namespace refix;

namespace {

using Cells = std::vector<std::vector<Vertex>>;

ColoredGraph cycle(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return ColoredGraph(n, edges);
}

ColoredGraph path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return ColoredGraph(n, edges);
}

std::vector<std::vector<Vertex>> sorted_cells(const Coloring& c) {
  auto cells = c.cells();
  std::sort(cells.begin(), cells.end());
  return cells;
}

}  // namespace

TEST(RefineStep, Examples) {
  auto p3 = path(3);
  EXPECT_EQ(refine_step(p3, initial_coloring(p3)).cells(), (Cells{{0, 2}, {1}}));

  auto c4 = cycle(4);
  EXPECT_EQ(refine_step(c4, initial_coloring(c4)).num_cells(), 1);

  std::vector<Vertex> v0{0};
  auto ind = individualize(c4, v0);
  EXPECT_EQ(sorted_cells(refine_step(ind, initial_coloring(ind))), (Cells{{0}, {1, 3}, {2}}));
}

TEST(RefineStep, RejectsPartialColoring) {
  auto p3 = path(3);
  EXPECT_THROW(refine_step(p3, Coloring::from_cells(2, {{0, 1}})), std::invalid_argument);
}

TEST(RefineStep, ChildOrderFollowsParentThenSignature) {
  // Star center 0 with leaves 1..3 plus a pendant 4 on leaf 3.
  ColoredGraph g(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
  auto next = refine_step(g, initial_coloring(g));
  // Signatures: [0] for 1, 2, 4; [0,0] for 3; [0,0,0] for 0.
  EXPECT_EQ(next.cells(), (Cells{{1, 2, 4}, {3}, {0}}));
  // Determinism: same input, same output.
  EXPECT_EQ(refine_step(g, initial_coloring(g)), next);
}

TEST(StableColoring, Examples) {
  ColoredGraph discrete(3, {{0, 1}}, {0, 1, 2});
  auto t = stable_coloring(discrete);
  EXPECT_EQ(t.stabilized_at, 1);
  EXPECT_EQ(t.stable(), initial_coloring(discrete));

  EXPECT_EQ(sorted_cells(stable_coloring(path(5)).stable()), (Cells{{0, 4}, {1, 3}, {2}}));

  std::vector<Vertex> v0{0};
  EXPECT_EQ(sorted_cells(stable_coloring(individualize(cycle(4), v0)).stable()), (Cells{{0}, {1, 3}, {2}}));
}

TEST(StableColoring, TraceInvariants) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto g = oracle::random_graph(rng, n, 0.4, 1 + static_cast<int>(rng() % 3));
    auto t = stable_coloring(g);
    ASSERT_LE(t.stabilized_at, n);
    for (std::size_t r = 1; r < t.rounds.size(); ++r) EXPECT_TRUE(t.rounds[r].refines(t.rounds[r - 1]));
    if (t.stabilized_at >= 1)
      EXPECT_TRUE(t.rounds[t.stabilized_at].same_partition(t.rounds[t.stabilized_at - 1]));
    auto reference = oracle::stable_labels(g, std::vector<int>(g.colors().begin(), g.colors().end()));
    EXPECT_TRUE(oracle::same_partition(reference, t.stable().cell_index()));
  }
}

TEST(StableColoring, IsomorphismInvariant) {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    auto g = oracle::random_graph(rng, n, 0.35, 2);
    auto perm = oracle::random_perm(rng, n);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    std::vector<Color> colors(n);
    for (Vertex v = 0; v < n; ++v) colors[perm[v]] = g.color(v);
    ColoredGraph h(n, edges, colors);
    auto a = stable_coloring(g).stable();
    auto b = stable_coloring(h).stable();
    ASSERT_EQ(a.num_cells(), b.num_cells());
    for (int c = 0; c < a.num_cells(); ++c) {
      std::vector<Vertex> mapped;
      for (Vertex v : a.cell(c)) mapped.push_back(perm[v]);
      std::sort(mapped.begin(), mapped.end());
      EXPECT_EQ(mapped, b.cell(c)) << "cell " << c << " trial " << trial;
    }
  }
}

TEST(RefineRounds, Examples) {
  auto p3 = path(3);
  EXPECT_EQ(refine_rounds(p3, 0), initial_coloring(p3));
  EXPECT_EQ(refine_rounds(p3, 1).cells(), (Cells{{0, 2}, {1}}));
  EXPECT_THROW(refine_rounds(p3, -1), std::invalid_argument);
}

TEST(RefineRounds, ChainAndLimit) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 9);
    auto g = oracle::random_graph(rng, n, 0.3, 2);
    for (int l = 0; l < n; ++l) EXPECT_TRUE(refine_rounds(g, l + 1).refines(refine_rounds(g, l)));
    EXPECT_EQ(refine_rounds(g, n), stable_coloring(g).stable());
  }
}

TEST(Individualize, Examples) {
  auto c4 = cycle(4);
  EXPECT_EQ(individualize(c4, std::vector<Vertex>{}), c4);

  ColoredGraph k2(2, {{0, 1}});
  std::vector<Vertex> v0{0};
  EXPECT_TRUE(refine_rounds(individualize(k2, v0), 0).is_discrete());

  std::vector<Vertex> all{3, 1, 0, 2};
  EXPECT_TRUE(initial_coloring(individualize(c4, all)).is_discrete());

  std::vector<Vertex> dup{1, 1};
  EXPECT_THROW(individualize(c4, dup), std::invalid_argument);
}

TEST(Individualize, FreshColorsAppendedInOrder) {
  ColoredGraph g(4, {}, {0, 0, 1, 1});
  std::vector<Vertex> s{3, 0};
  auto ind = individualize(g, s);
  EXPECT_EQ(ind.colors(), (std::vector<Color>{3, 0, 1, 2}));
}

TEST(Individualize, IndividualizedVerticesStaySingletons) {
  std::mt19937 rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 8);
    auto g = oracle::random_graph(rng, n, 0.4);
    std::vector<Vertex> s{static_cast<Vertex>(rng() % n)};
    auto stable = stable_coloring(individualize(g, s)).stable();
    EXPECT_EQ(stable.cell(stable.cell_of(s[0])).size(), 1u);
  }
}

TEST(Discrete, Examples) {
  auto p3 = path(3);
  EXPECT_FALSE(is_discrete(p3));
  std::vector<Vertex> a{0};
  EXPECT_TRUE(is_discrete(individualize(p3, a)));
  EXPECT_TRUE(is_discrete_within(individualize(p3, a), 2));
  EXPECT_FALSE(is_discrete_within(individualize(p3, a), 0));
  EXPECT_TRUE(is_discrete_within(ColoredGraph(1), 0));
}

TEST(ColorValence, Examples) {
  EXPECT_EQ(color_valence(ColoredGraph(5)), 0);
  ColoredGraph k22(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, {0, 0, 1, 1});
  EXPECT_EQ(color_valence(k22), 0);
  EXPECT_EQ(color_valence(cycle(4)), 2);
}

TEST(FastRefiner, SamePartitionAsNaiveRounds) {
  std::mt19937 rng(25);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 1 + static_cast<int>(rng() % 14);
    auto g = oracle::random_graph(rng, n, 0.1 + 0.05 * static_cast<double>(rng() % 8), 1 + static_cast<int>(rng() % 3));
    Refiner refiner(g);
    auto p = refiner.initial();
    refiner.equitable(p);
    EXPECT_TRUE(p.to_coloring().same_partition(stable_coloring(g).stable()));

    std::vector<Vertex> s;
    for (int step = 0; step < 3 && !p.discrete(); ++step) {
      Vertex v = static_cast<Vertex>(rng() % n);
      if (std::find(s.begin(), s.end(), v) != s.end()) continue;
      s.push_back(v);
      refiner.individualize(p, v);
      auto naive = stable_coloring(individualize(g, s)).stable();
      EXPECT_TRUE(p.to_coloring().same_partition(naive)) << "trial " << trial;
    }
  }
}

TEST(FastRefiner, TraceHashIsLabelInvariant) {
  std::mt19937 rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 10);
    auto g = oracle::random_graph(rng, n, 0.4);
    auto perm = oracle::random_perm(rng, n);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    ColoredGraph h(n, edges);
    Refiner rg(g), rh(h);
    auto pg = rg.initial();
    auto ph = rh.initial();
    EXPECT_EQ(rg.equitable(pg), rh.equitable(ph));
    Vertex v = static_cast<Vertex>(rng() % n);
    EXPECT_EQ(rg.individualize(pg, v), rh.individualize(ph, perm[v]));
  }
}
