#include <gtest/gtest.h>

#include "oracles.hpp"
#include "refix/perm_group.hpp"

using namespace refix;

namespace {

Permutation cyc(int n, std::vector<std::vector<Point>> cycles) { return Permutation::from_cycles(n, cycles); }

PermGroup random_group(std::mt19937& rng, int n) {
  int gens = static_cast<int>(rng() % 4);
  std::vector<Permutation> g;
  for (int i = 0; i < gens; ++i)
    g.push_back(rng() % 2 ? oracle::random_perm(rng, n) : oracle::random_sparse_perm(rng, n, 2 + static_cast<int>(rng() % 3)));
  return PermGroup(n, g);
}

std::vector<std::vector<Point>> all_subsets_brute_blocks(int n, const std::set<oracle::Perm>& group,
                                                         const std::vector<Point>& orbit) {
  // Every nontrivial block containing orbit[0], found by checking all subsets.
  std::vector<std::vector<Point>> blocks;
  int m = static_cast<int>(orbit.size());
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (!(mask & 1)) continue;
    int size = __builtin_popcount(static_cast<unsigned>(mask));
    if (size <= 1 || size >= m) continue;
    std::set<Point> block;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) block.insert(orbit[i]);
    bool ok = true;
    for (const auto& g : group) {
      std::set<Point> img;
      for (Point p : block) img.insert(g[p]);
      bool equal = img == block, disjoint = true;
      for (Point p : img) disjoint = disjoint && !block.count(p);
      if (!equal && !disjoint) ok = false;
    }
    if (ok) blocks.emplace_back(block.begin(), block.end());
  }
  (void)n;
  return blocks;
}

}  // namespace

TEST(PermutationTest, Basics) {
  EXPECT_TRUE(Permutation::identity(4).support().empty());
  auto t = cyc(3, {{0, 1}});
  EXPECT_TRUE(compose(t, t).is_identity());
  EXPECT_EQ(cyc(4, {{0, 1}, {2, 3}}).support(), (std::vector<Point>{0, 1, 2, 3}));
  auto c = cyc(4, {{0, 1, 2}});
  EXPECT_EQ(c[0], 1);
  EXPECT_EQ(compose(c, inverse(c)), Permutation::identity(4));
  EXPECT_EQ(c.cycle_string(), "(0 1 2)");
  EXPECT_THROW(Permutation({1, 1, 2}), std::invalid_argument);
  EXPECT_THROW(compose(c, Permutation::identity(3)), std::invalid_argument);
}

TEST(PermutationTest, RightActionComposition) {
  auto g = cyc(3, {{0, 1}});
  auto h = cyc(3, {{1, 2}});
  // 0 -> 1 under g, then 1 -> 2 under h.
  EXPECT_EQ(compose(g, h)[0], 2);
}

TEST(Orbits, Examples) {
  EXPECT_EQ(orbits(PermGroup(3, {cyc(3, {{0, 1}})})), (std::vector<std::vector<Point>>{{0, 1}, {2}}));
  EXPECT_EQ(orbits(PermGroup::trivial(3)), (std::vector<std::vector<Point>>{{0}, {1}, {2}}));
  EXPECT_EQ(orbits(PermGroup(4, {cyc(4, {{0, 1, 2, 3}})})).size(), 1u);
}

TEST(Bsgs, OrderAndMembershipExamples) {
  PermGroup s3(3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})});
  EXPECT_EQ(s3.order(), 6);
  EXPECT_TRUE(s3.contains(cyc(3, {{0, 2}})));
  EXPECT_EQ(PermGroup::trivial(5).order(), 1);
  PermGroup v4(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  EXPECT_EQ(v4.order(), 4);
  EXPECT_FALSE(v4.contains(cyc(4, {{0, 1}})));
}

TEST(Bsgs, LargerGroupsHaveExactOrders) {
  // S_10 from a transposition and a 10-cycle; M_11-free sanity on big symmetric groups.
  PermGroup s10(10, {cyc(10, {{0, 1}}), cyc(10, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}})});
  EXPECT_EQ(s10.order(), factorial(10));
  PermGroup a7(7, {cyc(7, {{0, 1, 2}}), cyc(7, {{0, 1, 2, 3, 4, 5, 6}})});
  EXPECT_EQ(a7.order(), factorial(7) / 2);
  std::vector<Permutation> flips;
  for (int i = 0; i < 20; ++i) flips.push_back(cyc(40, {{2 * i, 2 * i + 1}}));
  EXPECT_EQ(PermGroup(40, flips).order(), BigInt(1) << 20);
}

TEST(Bsgs, RandomGroupsMatchClosure) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 250; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto g = random_group(rng, n);
    auto closure = oracle::closure(n, oracle::images_of(g.generators()));
    ASSERT_EQ(g.order(), closure.size()) << "trial " << trial;
    for (int probe = 0; probe < 10; ++probe) {
      auto p = oracle::random_perm(rng, n);
      EXPECT_EQ(g.contains(p), closure.count(p.images()) > 0);
    }
    for (const auto& e : closure) EXPECT_TRUE(g.contains(Permutation(e)));
    const auto& b = g.bsgs();
    for (const auto& s : b.strong) EXPECT_TRUE(g.contains(s));
  }
}

TEST(PointwiseStabilizer, Examples) {
  PermGroup s3(3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})});
  EXPECT_EQ(pointwise_stabilizer(s3, std::vector<Point>{}).order(), 6);
  auto st = pointwise_stabilizer(s3, std::vector<Point>{0});
  EXPECT_EQ(st.order(), 2);
  EXPECT_TRUE(st.contains(cyc(3, {{1, 2}})));
  EXPECT_TRUE(pointwise_stabilizer(PermGroup(3, {cyc(3, {{0, 1}})}), std::vector<Point>{0}).is_trivial());
}

TEST(PointwiseStabilizer, RandomGroupsMatchClosure) {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto g = random_group(rng, n);
    auto closure = oracle::closure(n, oracle::images_of(g.generators()));
    std::vector<Point> s;
    for (Point p = 0; p < n; ++p)
      if (rng() % 3 == 0) s.push_back(p);
    auto st = pointwise_stabilizer(g, s);
    std::size_t expected = 0;
    for (const auto& e : closure)
      if (oracle::fixes(e, s)) {
        ++expected;
        EXPECT_TRUE(st.contains(Permutation(e)));
      }
    EXPECT_EQ(st.order(), expected);
    for (const auto& gen : st.generators()) EXPECT_TRUE(oracle::fixes(gen.images(), s));
  }
}

TEST(BlockSystems, Examples) {
  PermGroup c4(4, {cyc(4, {{0, 1, 2, 3}})});
  std::vector<Point> all4{0, 1, 2, 3};
  auto sys = maximal_block_system(c4, all4);
  EXPECT_FALSE(sys.primitive);
  EXPECT_EQ(sys.blocks, (std::vector<std::vector<Point>>{{0, 2}, {1, 3}}));

  PermGroup s4(4, {cyc(4, {{0, 1}}), cyc(4, {{0, 1, 2, 3}})});
  EXPECT_TRUE(maximal_block_system(s4, all4).primitive);

  PermGroup wreath(4, {cyc(4, {{0, 1}}), cyc(4, {{2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  EXPECT_EQ(maximal_block_system(wreath, all4).blocks, (std::vector<std::vector<Point>>{{0, 1}, {2, 3}}));

  PermGroup c5(5, {cyc(5, {{0, 1, 2, 3, 4}})});
  EXPECT_TRUE(is_primitive(c5, std::vector<Point>{0, 1, 2, 3, 4}));
  EXPECT_FALSE(is_primitive(c4, all4));
  PermGroup s3(3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})});
  EXPECT_TRUE(is_primitive(s3, std::vector<Point>{0, 1, 2}));

  EXPECT_THROW(maximal_block_system(PermGroup(4, {cyc(4, {{0, 1}})}), all4), std::invalid_argument);
}

TEST(BlockSystems, MaximalityAgainstBruteForce) {
  std::mt19937 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 150; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto g = random_group(rng, n);
    auto orbs = orbits(g);
    auto closure = oracle::closure(n, oracle::images_of(g.generators()));
    for (const auto& o : orbs) {
      if (o.size() < 2) continue;
      ++checked;
      auto sys = maximal_block_system(g, o);
      auto brute = all_subsets_brute_blocks(n, closure, o);
      EXPECT_EQ(sys.primitive, brute.empty());
      if (sys.primitive) continue;
      // invariance
      for (const auto& gen : g.generators())
        for (const auto& block : sys.blocks) {
          std::vector<Point> img;
          for (Point p : block) img.push_back(gen[p]);
          std::sort(img.begin(), img.end());
          EXPECT_NE(std::find(sys.blocks.begin(), sys.blocks.end(), img), sys.blocks.end());
        }
      // maximal: no brute-force block strictly contains the block of orbit[0]
      const auto& mine = sys.blocks.front();
      for (const auto& b : brute)
        if (b.size() > mine.size()) EXPECT_FALSE(std::includes(b.begin(), b.end(), mine.begin(), mine.end()));
      EXPECT_NE(std::find(brute.begin(), brute.end(), mine), brute.end());
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(BlockKernel, Examples) {
  PermGroup c4(4, {cyc(4, {{0, 1, 2, 3}})});
  BlockSystem sys{{0, 1, 2, 3}, {{0, 2}, {1, 3}}, false};
  auto k = block_kernel(c4, sys);
  EXPECT_EQ(k.order(), 2);
  EXPECT_TRUE(k.contains(cyc(4, {{0, 2}, {1, 3}})));

  BlockSystem singletons{{0, 1, 2, 3}, {{0}, {1}, {2}, {3}}, true};
  EXPECT_TRUE(block_kernel(c4, singletons).is_trivial());

  PermGroup fixing(4, {cyc(4, {{0, 2}}), cyc(4, {{1, 3}})});
  EXPECT_EQ(block_kernel(fixing, sys).order(), 4);

  BlockSystem bad{{0, 1, 2, 3}, {{0, 1}, {2, 3}}, false};
  EXPECT_THROW(block_kernel(c4, bad), std::invalid_argument);
}

TEST(BlockKernel, RandomGroupsMatchClosureAndIndex) {
  std::mt19937 rng(34);
  int checked = 0;
  for (int trial = 0; trial < 600 && checked < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto g = random_group(rng, n);
    for (const auto& o : orbits(g)) {
      if (o.size() < 2) continue;
      auto sys = maximal_block_system(g, o);
      ++checked;
      auto kernel = block_kernel(g, sys);
      auto closure = oracle::closure(n, oracle::images_of(g.generators()));
      std::size_t expected = 0;
      std::set<std::vector<int>> block_actions;
      for (const auto& e : closure) {
        bool keeps = true;
        std::vector<int> action;
        for (const auto& block : sys.blocks) {
          std::vector<Point> img;
          for (Point p : block) img.push_back(e[p]);
          std::sort(img.begin(), img.end());
          int idx = static_cast<int>(std::find(sys.blocks.begin(), sys.blocks.end(), img) - sys.blocks.begin());
          action.push_back(idx);
          keeps = keeps && img == block;
        }
        block_actions.insert(action);
        if (keeps) {
          ++expected;
          EXPECT_TRUE(kernel.contains(Permutation(e)));
        }
      }
      EXPECT_EQ(kernel.order(), expected);
      EXPECT_EQ(g.order() / kernel.order(), block_actions.size());
    }
  }
}

TEST(SymAlt, Examples) {
  std::vector<Point> four{0, 1, 2, 3};
  EXPECT_EQ(recognize_sym_alt(PermGroup(4, {cyc(4, {{0, 1}}), cyc(4, {{0, 1, 2, 3}})}), four), SymAltKind::sym);
  EXPECT_EQ(recognize_sym_alt(PermGroup(4, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})}), four), SymAltKind::alt);
  EXPECT_EQ(recognize_sym_alt(PermGroup(4, {cyc(4, {{0, 1, 2, 3}})}), four), SymAltKind::other);
}

TEST(Restrict, Examples) {
  PermGroup g(5, {cyc(5, {{0, 1}}), cyc(5, {{2, 3, 4}})});
  auto r = restrict(g, std::vector<Point>{2, 3, 4});
  EXPECT_EQ(r.group.order(), 3);
  EXPECT_EQ(r.to_original, (std::vector<Point>{2, 3, 4}));
  EXPECT_EQ(restrict(g, std::vector<Point>{0, 1, 2, 3, 4}).group.order(), g.order());
  PermGroup h(3, {cyc(3, {{0, 1}})});
  EXPECT_EQ(restrict(h, std::vector<Point>{2}).group.order(), 1);
  EXPECT_THROW(restrict(g, std::vector<Point>{0, 2}), std::invalid_argument);
}

TEST(JordanBound, CuratedPrimitiveGroups) {
  // Primitive groups that are neither Sym nor Alt: dihedral D5, cyclic C5, C7, AGL(1,5), PSL(2,7) on 7 points.
  std::vector<PermGroup> groups{
      PermGroup(5, {cyc(5, {{0, 1, 2, 3, 4}}), cyc(5, {{1, 4}, {2, 3}})}),
      PermGroup(5, {cyc(5, {{0, 1, 2, 3, 4}})}),
      PermGroup(7, {cyc(7, {{0, 1, 2, 3, 4, 5, 6}})}),
      PermGroup(5, {cyc(5, {{0, 1, 2, 3, 4}}), cyc(5, {{1, 2, 4, 3}})}),
      PermGroup(7, {cyc(7, {{0, 1, 2, 3, 4, 5, 6}}), cyc(7, {{1, 2, 4}, {3, 6, 5}}), cyc(7, {{0, 1}, {3, 6}})}),
  };
  for (const auto& g : groups) {
    std::vector<Point> all(g.degree());
    std::iota(all.begin(), all.end(), 0);
    ASSERT_TRUE(is_primitive(g, all));
    ASSERT_EQ(recognize_sym_alt(g, all), SymAltKind::other);
    auto elements = enumerate_elements(g, 100000);
    ASSERT_TRUE(elements);
    int min_support = g.degree();
    for (const auto& e : *elements)
      if (!e.is_identity()) min_support = std::min(min_support, e.support_size());
    for (int k = min_support; k <= g.degree(); ++k) {
      BigInt bound = 1;
      for (int i = 0; i < 2 * k; ++i) bound *= (k - 1);
      EXPECT_LE(BigInt(g.degree()), bound) << "k=" << k;
    }
  }
}

TEST(Enumerate, MatchesClosure) {
  std::mt19937 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    auto g = random_group(rng, n);
    auto elements = enumerate_elements(g, 100000);
    ASSERT_TRUE(elements);
    std::set<oracle::Perm> mine;
    for (const auto& e : *elements) mine.insert(e.images());
    EXPECT_EQ(mine, oracle::closure(n, oracle::images_of(g.generators())));
    EXPECT_EQ(mine.size(), elements->size());
  }
}
