#pragma once

// Brute-force ground truth for small groups. Nothing here filters through a
// stabilizer chain; the chain is consulted only to refuse oversized groups.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pbt/group.hpp"
#include "pbt/permutation.hpp"
#include "pbt/stabilizer_chain.hpp"

namespace pbt::oracle {

inline constexpr std::size_t default_cap = 1'000'000;

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded() : std::runtime_error("group too large to enumerate") {}
};

/// All elements of a group, sorted.
using ElementList = std::vector<Permutation>;

/// Breadth-first closure of the generators.
inline ElementList enumerate(const GeneratedGroup& group, std::size_t cap = default_cap) {
  if (StabilizerChain(group).order() > cap) throw CapExceeded();
  std::unordered_set<Permutation, PermutationHash> seen;
  ElementList elements{Permutation::identity(group.degree)};
  seen.insert(elements.front());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : group.generators) {
      Permutation h = elements[i] * g;
      if (seen.insert(h).second) elements.push_back(std::move(h));
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

inline ElementList filter_set_stabilizer(const ElementList& elements, const PointSet& set) {
  std::vector<bool> in(elements.empty() ? 0 : elements.front().degree(), false);
  for (Point x : set) in[x] = true;
  ElementList out;
  for (const auto& g : elements) {
    bool keeps = std::all_of(set.begin(), set.end(), [&](Point x) { return in[g[x]]; });
    if (keeps) out.push_back(g);
  }
  return out;
}

inline ElementList brute_set_stabilizer(const GeneratedGroup& group, const PointSet& set,
                                        std::size_t cap = default_cap) {
  return filter_set_stabilizer(enumerate(group, cap), set);
}

/// Elements mapping every cell onto itself; cells given as point lists.
inline ElementList brute_partition_stabilizer(const GeneratedGroup& group, const std::vector<PointSet>& cells,
                                              std::size_t cap = default_cap) {
  std::vector<std::size_t> cell_of(group.degree);
  for (std::size_t k = 0; k < cells.size(); ++k)
    for (Point x : cells[k]) cell_of[x] = k;
  ElementList out;
  for (const auto& g : enumerate(group, cap)) {
    bool keeps = true;
    for (Point x = 0; x < group.degree && keeps; ++x) keeps = cell_of[g[x]] == cell_of[x];
    if (keeps) out.push_back(g);
  }
  return out;
}

inline ElementList brute_intersection(const GeneratedGroup& g, const GeneratedGroup& h,
                                      std::size_t cap = default_cap) {
  ElementList a = enumerate(g, cap), b = enumerate(h, cap), out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Orbits of the group on ordered pairs of distinct points, each class
/// sorted, classes listed by their smallest pair.
inline std::vector<std::vector<std::pair<Point, Point>>> brute_pair_orbits(const GeneratedGroup& group) {
  const std::size_t n = group.degree;
  std::vector<bool> seen(n * n, false);
  std::vector<std::vector<std::pair<Point, Point>>> classes;
  for (Point a = 0; a < n; ++a) {
    for (Point b = 0; b < n; ++b) {
      if (a == b || seen[a * n + b]) continue;
      std::vector<std::pair<Point, Point>> cls{{a, b}};
      seen[a * n + b] = true;
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (const auto& g : group.generators) {
          Point x = g[cls[i].first], y = g[cls[i].second];
          if (!seen[x * n + y]) {
            seen[x * n + y] = true;
            cls.emplace_back(x, y);
          }
        }
      }
      std::sort(cls.begin(), cls.end());
      classes.push_back(std::move(cls));
    }
  }
  return classes;
}

/// Whether two element lists generate/are the same set of permutations.
inline bool same_elements(ElementList a, ElementList b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace pbt::oracle
