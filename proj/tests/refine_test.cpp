#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace pbt;
using pbt::fixtures::part;

namespace {

OrbitalGraph ten_cycle() { return orbital_graph(StabilizerChain(fixtures::dihedral10()), 0, 1); }

/// All set partitions of {0..n-1} finer than p, as ordered partitions in
/// arbitrary cell order.
void finer_partitions(const OrderedPartition& p, const std::function<void(const OrderedPartition&)>& visit) {
  const std::size_t n = p.degree();
  std::vector<OrderedPartition::Cell> blocks;
  std::function<void(Point)> rec = [&](Point x) {
    if (x == n) {
      visit(OrderedPartition(n, blocks));
      return;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (p.cell_of(blocks[i].front()) != p.cell_of(x)) continue;
      blocks[i].push_back(x);
      rec(x + 1);
      blocks[i].pop_back();
    }
    blocks.push_back({x});
    rec(x + 1);
    blocks.pop_back();
  };
  rec(0);
}

std::vector<std::unique_ptr<Refiner>> refiners_for(const GeneratedGroup& g, RefinerMode mode) {
  return group_refiners(std::make_shared<GroupContext>(g), mode);
}

}  // namespace

TEST(Equitable, TenCycleFromOneFive) {
  std::ostringstream trace;
  const OrbitalGraph graph = ten_cycle();
  auto p = OrderedPartition::from_set(10, std::vector<Point>{0, 4});
  auto result = equitable(std::vector<OrbitalGraph>{graph}, p, &trace);
  EXPECT_EQ(fixtures::cell_set(result), fixtures::cell_set(part("[1,5 | 8 | 6,10 | 3 | 7,9 | 2,4]", 10)));
  EXPECT_EQ(result, part("[1,5 | 3 | 7,9 | 8 | 6,10 | 2,4]", 10));
  EXPECT_EQ(sym_order(result), 16);
  EXPECT_EQ(trace.str(),
            "cell [2,3,4,6,7,8,9,10] -> [3,7,8,9]|[2,4,6,10] by graph #1\n"
            "cell [3,7,8,9] -> [3]|[7,9]|[8] by graph #1\n"
            "cell [2,4,6,10] -> [6,10]|[2,4] by graph #1\n");
}

TEST(Equitable, TenCycleFromOneSix) {
  auto p = OrderedPartition::from_set(10, std::vector<Point>{0, 5});
  auto result = equitable(std::vector<OrbitalGraph>{ten_cycle()}, p);
  EXPECT_EQ(result, part("[1,6 | 3,4,8,9 | 2,7,5,10]", 10));
  EXPECT_EQ(sym_order(result), 1152);
}

TEST(Equitable, EmptyGraphListIsIdentity) {
  auto p = part("[1,2 | 3,4,5]", 5);
  EXPECT_EQ(equitable(std::span<const OrbitalGraph>{}, p), p);
}

TEST(Equitable, FixpointAndCoarsest) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 5;
    GeneratedGroup group = fixtures::random_group(n, 2, rng);
    StabilizerChain chain(group);
    std::vector<OrbitalGraph> graphs;
    for (Point a = 0; a < n && graphs.size() < 2; ++a)
      for (Point b = 0; b < n && graphs.size() < 2; ++b)
        if (a != b && rng() % 4 == 0) graphs.push_back(orbital_graph(chain, a, b));
    if (graphs.empty()) continue;
    auto p = fixtures::random_partition(n, 3, rng);
    auto e = equitable(graphs, p);
    EXPECT_TRUE(is_finer(e, p));
    for (const auto& g : graphs) EXPECT_TRUE(is_equitable(g, e));
    EXPECT_EQ(equitable(graphs, e), e);
    finer_partitions(p, [&](const OrderedPartition& q) {
      bool eq = std::all_of(graphs.begin(), graphs.end(), [&](const auto& g) { return is_equitable(g, q); });
      if (eq) {
        EXPECT_TRUE(is_finer(q, e)) << to_string(q) << " vs " << to_string(e);
      }
    });
  }
}

TEST(FixedRefiner, Examples) {
  auto transitive = refiners_for(fixtures::dihedral10(), RefinerMode::Fixed);
  auto p = part("[1,2,3 | 4,5,6,7,8,9,10]", 10);
  EXPECT_EQ(transitive[0]->record(p, 0), p);

  GeneratedGroup g(7, {fixtures::cyc("(1,2,3)", 7), fixtures::cyc("(5,7)", 7)});
  auto fixed = refiners_for(g, RefinerMode::Fixed);
  EXPECT_EQ(fixed[0]->record(OrderedPartition::trivial(7), 0), part("[1,2,3 | 4 | 5,7 | 6]", 7));

  // Recorded at a fixed point of the first orbit; no element sends 1 to 5.
  auto left = part("[2,3 | 4 | 5,7 | 6 | 1]", 7);
  fixed[0]->record(left, 1);
  auto right = part("[2,3 | 4 | 1,7 | 6 | 5]", 7);
  EXPECT_FALSE(fixed[0]->replay(right, 1));
}

TEST(OrbRefiner, Examples) {
  auto two_trans = refiners_for(symmetric_group(6), RefinerMode::PreOrbital);
  auto p = part("[1,2 | 3,4,5,6]", 6);
  EXPECT_EQ(two_trans[1]->record(p, 0), p);

  auto h1 = refiners_for(fixtures::dihedral10(), RefinerMode::PreOrbital);
  auto q = OrderedPartition::from_set(10, std::vector<Point>{0, 4});
  auto refined = h1[1]->record(q, 0);
  EXPECT_EQ(fixtures::cell_set(refined), fixtures::cell_set(part("[1,5 | 8 | 6,10 | 3 | 7,9 | 2,4]", 10)));

  auto d = OrderedPartition::discrete(10);
  EXPECT_EQ(h1[1]->record(d, 1), d);
}

TEST(DeepOrbRefiner, AffineGroupRefinesWithOneFixedPoint) {
  GeneratedGroup agl = fixtures::affine_line(7, 3);
  ASSERT_TRUE(is_2_transitive(agl));
  // Point 1 stands for 0 in Z/7; its stabilizer x -> 3^k x is regular on the rest.
  auto p = part("[2,3 | 4,5,6,7 | 1]", 7);
  auto orb = refiners_for(agl, RefinerMode::PreOrbital);
  EXPECT_EQ(orb[0]->record(p, 0), p);
  EXPECT_EQ(orb[1]->record(p, 1), p);

  auto deep = refiners_for(agl, RefinerMode::DeepOrbital);
  auto refined = deep[1]->record(p, 0);
  EXPECT_GT(refined.size(), p.size());
  EXPECT_TRUE(is_finer(refined, p));
  std::vector<OrbitalGraph> graphs = orbital_base(StabilizerChain(agl).stabilizer_of(std::vector<Point>{0}));
  EXPECT_EQ(graphs.size(), 5u);
  for (const auto& g : graphs) EXPECT_TRUE(is_equitable(g, refined));
}

TEST(DeepOrbRefiner, NoSingletonsMatchesOrb) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    GeneratedGroup g = fixtures::random_group(7, 2, rng);
    auto p = fixtures::random_partition(7, 3, rng);
    if (!singletons(p).empty()) continue;
    auto orb = refiners_for(g, RefinerMode::PreOrbital);
    auto deep = refiners_for(g, RefinerMode::DeepOrbital);
    EXPECT_EQ(orb[1]->record(p, 0), deep[1]->record(p, 0));
  }
}

TEST(DeepOrbRefiner, ReplayWithoutWitnessPrunes) {
  GeneratedGroup g(7, {fixtures::cyc("(1,2,3)", 7), fixtures::cyc("(5,7)", 7)});
  auto deep = refiners_for(g, RefinerMode::DeepOrbital);
  deep[1]->record(part("[2,3 | 4,5,6,7 | 1]", 7), 0);
  EXPECT_FALSE(deep[1]->replay(part("[1,2 | 3,4,6,7 | 5]", 7), 0));
}

TEST(FirstOrbRefiner, NotTwoTransitiveFreezesAtRoot) {
  auto ctx = std::make_shared<GroupContext>(fixtures::dihedral10());
  FirstOrbRefiner first(ctx);
  OrbRefiner orb(ctx);
  auto p = OrderedPartition::from_set(10, std::vector<Point>{0, 4});
  EXPECT_EQ(first.record(p, 0), orb.record(p, 0));
  EXPECT_EQ(first.frozen_at(), 0u);
  auto q = split_cell(orb.record(p, 1), 0, 0);
  EXPECT_EQ(first.record(q, 2), orb.record(q, 3));
}

TEST(FirstOrbRefiner, TwoTransitiveFreezesAfterFirstPoint) {
  GeneratedGroup agl = fixtures::affine_line(7, 3);
  auto ctx = std::make_shared<GroupContext>(agl);
  FirstOrbRefiner first(ctx);
  DeepOrbRefiner deep(std::make_shared<GroupContext>(agl));
  auto root = OrderedPartition::trivial(7);
  EXPECT_EQ(first.record(root, 0), root);
  EXPECT_FALSE(first.frozen_at());
  auto p = split_cell(root, 0, 0);
  EXPECT_EQ(first.record(p, 1), deep.record(p, 1));
  EXPECT_EQ(first.frozen_at(), 1u);
}

TEST(RefinerLaws, AllModesOnRandomGroups) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    GeneratedGroup group = fixtures::random_group(n, 1 + rng() % 2, rng);
    StabilizerChain chain(group);
    auto p = fixtures::random_partition(n, 4, rng);
    if (rng() % 2) {
      for (int k = 0; k < 2 && !p.is_discrete(); ++k) {
        std::size_t c = 0;
        while (p.cell(c).size() < 2) ++c;
        p = split_cell(p, c, p.cell(c)[rng() % p.cell(c).size()]);
      }
    }
    Permutation g = chain.random_element(rng);
    auto pg = apply(p, g);
    for (RefinerMode mode : all_modes) {
      auto refs = refiners_for(group, mode);
      std::size_t call = 0;
      for (auto& r : refs) {
        auto left = r->record(p, call);
        EXPECT_TRUE(is_finer(left, p)) << r->name();
        auto right = r->replay(pg, call);
        ASSERT_TRUE(right) << r->name();
        EXPECT_EQ(*right, apply(left, g)) << r->name() << " " << to_string(p);
        ++call;
      }
    }
  }
}

TEST(RefinerLaws, ElementsOutsideGroupMayPrune) {
  // Image under a non-member with a different fixed-point orbit pattern.
  GeneratedGroup g(7, {fixtures::cyc("(1,2,3)", 7), fixtures::cyc("(5,7)", 7)});
  auto refs = refiners_for(g, RefinerMode::Fixed);
  auto p = part("[2,3,4,5,6,7 | 1]", 7);
  refs[0]->record(p, 0);
  EXPECT_FALSE(refs[0]->replay(part("[1,2,3,5,6,7 | 4]", 7), 0));
}
