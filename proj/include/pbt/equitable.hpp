#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pbt/orbital_graph.hpp"
#include "pbt/ordered_partition.hpp"

namespace pbt {

namespace detail {

inline std::string cell_text(const std::vector<Point>& cell) {
  std::string out = "[";
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cell[i] + 1);
  }
  return out + "]";
}

}  // namespace detail

/// Coarsest graph-equitable partition finer than `p`, where a point's
/// adjacency to a cell counts neighbours joined in either direction.
///
/// Splitters are processed first-in-first-out, starting with the cells of
/// `p` in order. A split cell is replaced in place by its fragments in
/// ascending order of adjacency count, and the fragments join the queue.
inline OrderedPartition equalize(const OrbitalGraph& graph, const OrderedPartition& p, std::ostream* trace = nullptr,
                                 std::size_t graph_index = 0) {
  using Cell = OrderedPartition::Cell;
  const std::size_t n = p.degree();
  std::vector<Cell> cells = p.cells();
  std::deque<Cell> work(cells.begin(), cells.end());
  std::vector<std::size_t> count(n, 0);
  std::vector<Point> touched;
  std::vector<std::pair<std::size_t, Point>> keyed;
  while (!work.empty() && cells.size() < n) {
    Cell splitter = std::move(work.front());
    work.pop_front();
    touched.clear();
    for (Point j : splitter)
      for (Point x : graph.neighbours(j))
        if (count[x]++ == 0) touched.push_back(x);
    if (touched.empty()) continue;

    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Cell& cell = cells[c];
      const std::size_t first = count[cell.front()];
      if (std::all_of(cell.begin(), cell.end(), [&](Point x) { return count[x] == first; })) continue;
      keyed.clear();
      for (Point x : cell) keyed.emplace_back(count[x], x);
      std::sort(keyed.begin(), keyed.end());
      std::vector<Cell> fragments;
      for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i == 0 || keyed[i].first != keyed[i - 1].first) fragments.emplace_back();
        fragments.back().push_back(keyed[i].second);
      }
      if (trace) {
        *trace << "cell " << detail::cell_text(cell) << " -> ";
        for (std::size_t f = 0; f < fragments.size(); ++f) *trace << (f ? "|" : "") << detail::cell_text(fragments[f]);
        *trace << " by graph #" << graph_index + 1 << "\n";
      }
      for (const auto& f : fragments) work.push_back(f);
      const std::size_t k = fragments.size();
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
      cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c), std::make_move_iterator(fragments.begin()),
                   std::make_move_iterator(fragments.end()));
      c += k - 1;
    }
    for (Point x : touched) count[x] = 0;
  }
  return OrderedPartition(n, std::move(cells));
}

/// Refines `p` by equalizing against each graph and meeting the results in
/// list order, repeated until nothing changes. The result is equitable for
/// every graph in the list.
inline OrderedPartition equitable(std::span<const OrbitalGraph> graphs, const OrderedPartition& p,
                                  std::ostream* trace = nullptr) {
  OrderedPartition current = p;
  if (graphs.empty()) return current;
  for (;;) {
    std::optional<OrderedPartition> acc;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      OrderedPartition e = equalize(graphs[i], current, trace, i);
      acc = acc ? meet(*acc, e) : std::move(e);
    }
    if (acc->size() == current.size()) return current;
    current = std::move(*acc);
  }
}

/// Whether every cell of `p` has uniform adjacency counts into every cell.
inline bool is_equitable(const OrbitalGraph& graph, const OrderedPartition& p) {
  for (const auto& target : p.cells()) {
    std::vector<std::size_t> count(p.degree(), 0);
    for (Point j : target)
      for (Point x : graph.neighbours(j)) ++count[x];
    for (const auto& cell : p.cells())
      for (Point x : cell)
        if (count[x] != count[cell.front()]) return false;
  }
  return true;
}

}  // namespace pbt
