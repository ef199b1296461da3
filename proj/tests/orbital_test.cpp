#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "pbt/oracle.hpp"
#include "support.hpp"

using namespace pbt;

namespace {

/// (vertex count, arc count) of each weakly connected component with at least two vertices.
std::vector<std::pair<std::size_t, std::size_t>> component_sizes(const OrbitalGraph& g) {
  const std::size_t n = g.degree();
  std::vector<int> comp(n, -1);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (Point s = 0; s < n; ++s) {
    if (comp[s] >= 0 || g.neighbours(s).empty()) continue;
    const int id = static_cast<int>(out.size());
    std::vector<Point> stack{s};
    comp[s] = id;
    std::size_t vertices = 0, arcs = 0;
    while (!stack.empty()) {
      Point x = stack.back();
      stack.pop_back();
      ++vertices;
      arcs += g.out_neighbours(x).size();
      for (Point y : g.neighbours(x))
        if (comp[y] < 0) {
          comp[y] = id;
          stack.push_back(y);
        }
    }
    out.emplace_back(vertices, arcs);
  }
  return out;
}

}  // namespace

TEST(OrbitalGraph, TriangleExample) {
  StabilizerChain h(fixtures::cycle_and_s3());
  auto g = orbital_graph(h, 0, 1);
  EXPECT_EQ(dump_arcs(g), "1 -> 2\n2 -> 3\n3 -> 1\n");
  for (Point x = 3; x < 6; ++x) EXPECT_TRUE(g.neighbours(x).empty());
  EXPECT_FALSE(is_futile_by_counts(h, 0, 1));
  EXPECT_FALSE(is_futile_by_definition(h.group(), g));
  EXPECT_FALSE(is_futile_by_shape(g));
}

TEST(OrbitalGraph, CompleteDigraphExample) {
  StabilizerChain h(fixtures::cycle_and_s3());
  auto g = orbital_graph(h, 4, 5);
  EXPECT_EQ(dump_arcs(g), "4 -> 5\n4 -> 6\n5 -> 4\n5 -> 6\n6 -> 4\n6 -> 5\n");
  EXPECT_TRUE(is_futile_by_counts(h, 4, 5));
  EXPECT_TRUE(is_futile_by_definition(h.group(), g));
  EXPECT_TRUE(is_futile_by_shape(g));
}

TEST(OrbitalGraph, CompleteBipartiteExample) {
  StabilizerChain h(fixtures::cycle_and_s3());
  auto g = orbital_graph(h, 1, 3);
  EXPECT_EQ(g.arc_count(), 9u);
  for (Point x = 0; x < 3; ++x)
    for (Point y = 3; y < 6; ++y) EXPECT_TRUE(g.has_arc(x, y));
  EXPECT_TRUE(is_futile_by_counts(h, 1, 3));
  EXPECT_TRUE(is_futile_by_definition(h.group(), g));
  EXPECT_TRUE(is_futile_by_shape(g));
}

TEST(OrbitalGraph, TwoTrianglesAreNotFutile) {
  StabilizerChain h(fixtures::two_triangles());
  auto g = orbital_graph(h, 0, 1);
  EXPECT_EQ(g.arc_count(), 12u);
  EXPECT_FALSE(g.has_arc(0, 3));
  EXPECT_FALSE(is_futile_by_counts(h, 0, 1));
  EXPECT_FALSE(is_futile_by_definition(h.group(), g));
  EXPECT_FALSE(is_futile_by_shape(g));
}

TEST(OrbitalGraph, SymmetricGroupIsFutile) {
  StabilizerChain s3(symmetric_group(3));
  for (Point a = 0; a < 3; ++a)
    for (Point b = 0; b < 3; ++b)
      if (a != b) {
        EXPECT_TRUE(is_futile_by_counts(s3, a, b));
      }
}

TEST(OrbitalGraph, RejectsEqualBasePoints) {
  StabilizerChain h(fixtures::cycle_and_s3());
  EXPECT_THROW(orbital_graph(h, 2, 2), std::invalid_argument);
  EXPECT_THROW(is_futile_by_counts(h, 2, 2), std::invalid_argument);
}

TEST(OrbitalGraph, PairedSwapIsSelfPairedWithoutTransposition) {
  GeneratedGroup h(4, {fixtures::cyc("(1,2)(3,4)", 4)});
  auto g = orbital_graph(StabilizerChain(h), 0, 1);
  EXPECT_TRUE(g.has_arc(1, 0));
  EXPECT_FALSE(StabilizerChain(h).contains(fixtures::cyc("(1,2)", 4)));
}

TEST(OrbitalBase, Examples) {
  EXPECT_TRUE(orbital_base(symmetric_group(3)).empty());

  // The 3-cycle and its reverse are distinct pair classes; both are kept.
  auto base = orbital_base(fixtures::cycle_and_s3());
  ASSERT_EQ(base.size(), 2u);
  EXPECT_EQ(base[0].base_pair(), (Arc{0, 1}));
  EXPECT_EQ(base[1].base_pair(), (Arc{0, 2}));

  // Same row, same column, and neither; the last is not futile either.
  auto grid = orbital_base(make_grid_group(3));
  ASSERT_EQ(grid.size(), 3u);
  std::multiset<std::size_t> arc_counts;
  for (const auto& g : grid) arc_counts.insert(g.arc_count());
  EXPECT_EQ(arc_counts, (std::multiset<std::size_t>{18, 18, 36}));
  int rows = 0, cols = 0, neither = 0;
  for (const auto& g : grid) {
    auto [x, y] = g.base_pair();
    const bool same_row = x / 3 == y / 3, same_col = x % 3 == y % 3;
    rows += same_row;
    cols += same_col;
    neither += !same_row && !same_col;
    for (auto [u, v] : g.arcs()) {
      EXPECT_EQ(u / 3 == v / 3, same_row);
      EXPECT_EQ(u % 3 == v % 3, same_col);
    }
  }
  EXPECT_EQ(rows, 1);
  EXPECT_EQ(cols, 1);
  EXPECT_EQ(neither, 1);
  EXPECT_EQ(oracle::brute_pair_orbits(make_grid_group(3)).size(), 3u);
}

TEST(OrbitalBase, SizeLimitDropsLargeGraphs) {
  auto all = orbital_base(fixtures::dihedral10());
  auto limited = orbital_base(fixtures::dihedral10(), 10);
  EXPECT_FALSE(all.empty());
  for (const auto& g : limited) EXPECT_LE(g.arc_count(), 10u);
  std::size_t small = std::count_if(all.begin(), all.end(), [](const auto& g) { return g.arc_count() <= 10; });
  EXPECT_EQ(limited.size(), small);
}

TEST(OrbitalBase, SymmetricGroupsHaveNone) {
  for (std::size_t n = 2; n <= 12; ++n) EXPECT_TRUE(orbital_base(symmetric_group(n)).empty()) << n;
}

TEST(OrbitalProperties, RandomGroups) {
  std::mt19937_64 rng(4321);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    GeneratedGroup group = fixtures::random_group(n, 1 + rng() % 2, rng);
    StabilizerChain chain(group);
    const auto classes = oracle::brute_pair_orbits(group);

    // Every pair class is represented once among all candidate base pairs.
    std::set<std::vector<Arc>> seen;
    for (const auto& cls : classes) {
      auto [a, b] = cls.front();
      OrbitalGraph g = orbital_graph(chain, a, b);
      ASSERT_EQ(g.arcs(), cls);
      seen.insert(g.arcs());

      for (const auto& s : group.generators)
        for (auto [x, y] : g.arcs()) EXPECT_TRUE(g.has_arc(s[x], s[y]));

      PointSet sources, targets;
      for (auto [x, y] : g.arcs()) {
        sources.push_back(x);
        targets.push_back(y);
      }
      std::ranges::sort(sources);
      sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
      std::ranges::sort(targets);
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      EXPECT_EQ(sources, orbit(n, group.generators, a));
      EXPECT_EQ(targets, orbit(n, group.generators, b));

      const Point hint[] = {a};
      const auto inner = orbit(n, chain.stabilizer_of(hint).generators(), b);
      EXPECT_EQ(g.arc_count(), sources.size() * inner.size());

      auto comps = component_sizes(g);
      for (const auto& c : comps) EXPECT_EQ(c, comps.front());

      const bool by_counts = is_futile_by_counts(chain, a, b);
      const bool by_definition = is_futile_by_definition(group, g);
      EXPECT_EQ(by_counts, by_definition);
      EXPECT_EQ(by_counts, is_futile_by_shape(g));

      // Arc-count thresholds: beyond them the graph must be futile.
      const std::size_t na = sources.size(), nb = targets.size();
      const bool same_orbit = std::binary_search(sources.begin(), sources.end(), b);
      if (same_orbit && g.arc_count() > na * (na - 2)) {
        EXPECT_TRUE(by_definition);
      }
      if (!same_orbit && (g.arc_count() > na * (nb - 1) || g.arc_count() > nb * (na - 1))) {
        EXPECT_TRUE(by_definition);
      }
      if (!by_definition && same_orbit) {
        EXPECT_LE(g.arc_count(), na * (na - 2));
      }
    }
    EXPECT_EQ(seen.size(), classes.size());

    // The orbital base is exactly the non-futile classes.
    std::set<std::vector<Arc>> expected;
    for (const auto& cls : classes) {
      OrbitalGraph g = orbital_graph(chain, cls.front().first, cls.front().second);
      if (!is_futile_by_definition(group, g)) expected.insert(g.arcs());
    }
    std::set<std::vector<Arc>> got;
    for (const auto& g : orbital_base(chain)) {
      EXPECT_TRUE(got.insert(g.arcs()).second);
      auto [a, b] = g.base_pair();
      EXPECT_EQ(a, orbit(n, group.generators, a).front());
    }
    EXPECT_EQ(got, expected);

    // Transitive groups: one futile class forces 2-transitivity.
    if (is_transitive(chain) && n >= 2) {
      bool any_futile = false;
      for (const auto& cls : classes) any_futile |= is_futile_by_counts(chain, cls.front().first, cls.front().second);
      EXPECT_EQ(any_futile, is_2_transitive(chain));
      if (is_2_transitive(chain)) {
        EXPECT_TRUE(orbital_base(chain).empty());
      }
    }
  }
}

TEST(OrbitalGraph, RelabelMatchesImage) {
  std::mt19937_64 rng(8);
  StabilizerChain chain(fixtures::dihedral10());
  auto g = orbital_graph(chain, 0, 1);
  Permutation p = fixtures::random_permutation(10, rng);
  auto r = g.relabel(p);
  for (auto [x, y] : g.arcs()) EXPECT_TRUE(r.has_arc(p[x], p[y]));
  EXPECT_EQ(r.arc_count(), g.arc_count());
  EXPECT_EQ(g.relabel(fixtures::dihedral10().generators[0]), g);
}
