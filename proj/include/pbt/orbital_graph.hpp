#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pbt/group.hpp"
#include "pbt/permutation.hpp"
#include "pbt/stabilizer_chain.hpp"

namespace pbt {

using Arc = std::pair<Point, Point>;

/// Digraph on the domain whose arcs are the orbit of a base pair under a group.
class OrbitalGraph {
 public:
  OrbitalGraph() = default;

  /// Takes a sorted, duplicate-free arc list; checks loops and the base pair.
  OrbitalGraph(std::size_t degree, Arc base_pair, std::vector<Arc> arcs)
      : degree_(degree), base_pair_(base_pair), arcs_(std::move(arcs)), out_(degree), in_(degree), neighbours_(degree) {
    if (!std::binary_search(arcs_.begin(), arcs_.end(), base_pair_))
      throw std::invalid_argument("orbital graph does not contain its base pair");
    for (auto [x, y] : arcs_) {
      if (x == y) throw std::invalid_argument("orbital graph has a loop");
      out_[x].push_back(y);
      in_[y].push_back(x);
    }
    for (Point x = 0; x < degree_; ++x) {
      std::sort(out_[x].begin(), out_[x].end());
      std::sort(in_[x].begin(), in_[x].end());
      std::set_union(out_[x].begin(), out_[x].end(), in_[x].begin(), in_[x].end(), std::back_inserter(neighbours_[x]));
    }
  }

  std::size_t degree() const { return degree_; }
  Arc base_pair() const { return base_pair_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Point>& out_neighbours(Point x) const { return out_[x]; }
  const std::vector<Point>& in_neighbours(Point x) const { return in_[x]; }
  /// Points j with (x,j) or (j,x) an arc, each listed once.
  const std::vector<Point>& neighbours(Point x) const { return neighbours_[x]; }

  bool has_arc(Point x, Point y) const { return std::binary_search(out_[x].begin(), out_[x].end(), y); }

  /// The image graph under g: arcs (x^g, y^g).
  OrbitalGraph relabel(const Permutation& g) const {
    std::vector<Arc> arcs;
    arcs.reserve(arcs_.size());
    for (auto [x, y] : arcs_) arcs.emplace_back(g[x], g[y]);
    std::sort(arcs.begin(), arcs.end());
    return OrbitalGraph(degree_, {g[base_pair_.first], g[base_pair_.second]}, std::move(arcs));
  }

  bool operator==(const OrbitalGraph& other) const { return degree_ == other.degree_ && arcs_ == other.arcs_; }

 private:
  std::size_t degree_ = 0;
  Arc base_pair_{0, 0};
  std::vector<Arc> arcs_;
  std::vector<std::vector<Point>> out_, in_, neighbours_;
};

/// The orbit of (alpha, beta) under `generators`.
inline OrbitalGraph orbital_graph(std::size_t degree, const std::vector<Permutation>& generators, Point alpha,
                                  Point beta) {
  if (alpha == beta) throw std::invalid_argument("orbital graph base pair must be two distinct points");
  if (alpha >= degree || beta >= degree) throw std::invalid_argument("base pair outside the domain");
  std::vector<bool> seen(degree * degree, false);
  std::vector<Arc> arcs{{alpha, beta}};
  seen[alpha * degree + beta] = true;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (const auto& g : generators) {
      Point x = g[arcs[i].first], y = g[arcs[i].second];
      if (!seen[x * degree + y]) {
        seen[x * degree + y] = true;
        arcs.emplace_back(x, y);
      }
    }
  }
  std::sort(arcs.begin(), arcs.end());
  return OrbitalGraph(degree, {alpha, beta}, std::move(arcs));
}

inline OrbitalGraph orbital_graph(const StabilizerChain& chain, Point alpha, Point beta) {
  return orbital_graph(chain.degree(), chain.generators(), alpha, beta);
}

/// One arc "u -> v" per line, 1-based, sorted.
inline std::string dump_arcs(const OrbitalGraph& graph) {
  std::string out;
  for (auto [x, y] : graph.arcs()) out += std::to_string(x + 1) + " -> " + std::to_string(y + 1) + "\n";
  return out;
}

namespace detail {

inline bool contains(const PointSet& sorted, Point x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

/// Futility from orbit sizes alone:
///   beta in alpha^H:     |beta^(H_alpha)| + 1 == |alpha^H|   (complete digraph)
///   beta not in alpha^H: |beta^(H_alpha)| == |beta^H|        (complete bipartite)
inline bool futile_by_sizes(bool beta_in_alpha_orbit, std::size_t alpha_orbit, std::size_t beta_orbit,
                            std::size_t inner_orbit) {
  return beta_in_alpha_orbit ? inner_orbit + 1 == alpha_orbit : inner_orbit == beta_orbit;
}

}  // namespace detail

/// Decides futility of the orbital graph with base pair (alpha, beta)
/// without building it.
inline bool is_futile_by_counts(const StabilizerChain& chain, Point alpha, Point beta) {
  if (alpha == beta) throw std::invalid_argument("base pair must be two distinct points");
  const auto gens = chain.generators();
  PointSet alpha_orbit = orbit(chain.degree(), gens, alpha);
  PointSet beta_orbit = orbit(chain.degree(), gens, beta);
  const Point hint[] = {alpha};
  PointSet inner = orbit(chain.degree(), chain.stabilizer_of(hint).generators(), beta);
  return detail::futile_by_sizes(detail::contains(alpha_orbit, beta), alpha_orbit.size(), beta_orbit.size(),
                                 inner.size());
}

/// Futility by definition: every transposition inside an orbit of `group`
/// is a graph automorphism. Quadratic in the orbit sizes; a test oracle.
inline bool is_futile_by_definition(const GeneratedGroup& group, const OrbitalGraph& graph) {
  const auto& arc_set = graph.arcs();
  for (const auto& orb : orbits(group)) {
    for (std::size_t i = 0; i < orb.size(); ++i) {
      for (std::size_t j = i + 1; j < orb.size(); ++j) {
        Point a = orb[i], b = orb[j];
        auto swap = [a, b](Point x) { return x == a ? b : (x == b ? a : x); };
        for (auto [x, y] : arc_set) {
          if (!graph.has_arc(swap(x), swap(y))) return false;
        }
      }
    }
  }
  return true;
}

/// Structural futility test: exactly one weakly connected component with at
/// least two vertices, and it is a complete digraph or a complete bipartite
/// digraph whose source and target sets are disjoint.
inline bool is_futile_by_shape(const OrbitalGraph& graph) {
  const std::size_t n = graph.degree();
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [x, y] : graph.arcs()) parent[find(x)] = find(y);
  std::vector<Point> vertices;
  Point root = static_cast<Point>(n);
  for (Point x = 0; x < n; ++x) {
    if (graph.neighbours(x).empty()) continue;
    if (root == n) root = find(x);
    if (find(x) != root) return false;
    vertices.push_back(x);
  }
  if (vertices.empty()) return false;
  std::vector<Point> sources, targets;
  for (Point x : vertices) {
    if (!graph.out_neighbours(x).empty()) sources.push_back(x);
    if (!graph.in_neighbours(x).empty()) targets.push_back(x);
  }
  const std::size_t v = vertices.size();
  if (graph.arc_count() == v * (v - 1)) return true;  // complete digraph
  std::vector<Point> common;
  std::set_intersection(sources.begin(), sources.end(), targets.begin(), targets.end(), std::back_inserter(common));
  return common.empty() && graph.arc_count() == sources.size() * targets.size();
}

/// One orbital graph per non-futile pair-orbit class whose arc count is at
/// most `size_limit`. Base pairs are (min of a G-orbit, min of a G_alpha-orbit).
/// Empty for 2-transitive groups.
inline std::vector<OrbitalGraph> orbital_base(const StabilizerChain& chain,
                                              std::size_t size_limit = std::numeric_limits<std::size_t>::max()) {
  std::vector<OrbitalGraph> graphs;
  if (is_2_transitive(chain)) return graphs;
  const std::size_t n = chain.degree();
  const auto gens = chain.generators();
  auto outer = orbits(n, gens);
  auto outer_label = orbit_labels(n, gens);
  for (const auto& orb : outer) {
    if (orb.size() <= 1) continue;
    const Point alpha = orb.front();
    const Point hint[] = {alpha};
    const auto stab_gens = chain.stabilizer_of(hint).generators();
    for (const auto& inner : orbits(n, stab_gens)) {
      const Point beta = inner.front();
      if (beta == alpha) continue;
      if (orb.size() > size_limit / inner.size()) continue;
      const bool same_orbit = outer_label[beta] == outer_label[alpha];
      const std::size_t beta_orbit = outer[outer_label[beta]].size();
      if (detail::futile_by_sizes(same_orbit, orb.size(), beta_orbit, inner.size())) continue;
      graphs.push_back(orbital_graph(n, gens, alpha, beta));
    }
  }
  return graphs;
}

inline std::vector<OrbitalGraph> orbital_base(const GeneratedGroup& group,
                                              std::size_t size_limit = std::numeric_limits<std::size_t>::max()) {
  return orbital_base(StabilizerChain(group), size_limit);
}

}  // namespace pbt
