#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pbt/permutation.hpp"

namespace pbt {

/// Ordered list of disjoint, non-empty cells covering {0..n-1}. Cells are
/// kept sorted, so equality ignores the order of points within a cell.
class OrderedPartition {
 public:
  using Cell = std::vector<Point>;

  OrderedPartition() = default;

  /// Throws std::invalid_argument unless `cells` partition {0..degree-1}.
  OrderedPartition(std::size_t degree, std::vector<Cell> cells) : cells_(std::move(cells)), cell_of_(degree, npos) {
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      if (cells_[k].empty()) throw std::invalid_argument("ordered partition has an empty cell");
      std::sort(cells_[k].begin(), cells_[k].end());
      for (Point x : cells_[k]) {
        if (x >= degree || cell_of_[x] != npos) throw std::invalid_argument("cells are not a partition of the domain");
        cell_of_[x] = k;
      }
    }
    if (std::find(cell_of_.begin(), cell_of_.end(), npos) != cell_of_.end())
      throw std::invalid_argument("cells do not cover the domain");
  }

  static OrderedPartition trivial(std::size_t degree) {
    if (degree == 0) return OrderedPartition(0, {});
    Cell all(degree);
    std::iota(all.begin(), all.end(), Point{0});
    return OrderedPartition(degree, {std::move(all)});
  }

  static OrderedPartition discrete(std::size_t degree) {
    std::vector<Cell> cells;
    for (Point x = 0; x < degree; ++x) cells.push_back({x});
    return OrderedPartition(degree, std::move(cells));
  }

  /// [S | rest], or the trivial partition when S is empty or everything.
  static OrderedPartition from_set(std::size_t degree, std::span<const Point> set) {
    std::vector<bool> in(degree, false);
    for (Point x : set) in.at(x) = true;
    Cell inside, outside;
    for (Point x = 0; x < degree; ++x) (in[x] ? inside : outside).push_back(x);
    std::vector<Cell> cells;
    if (!inside.empty()) cells.push_back(std::move(inside));
    if (!outside.empty()) cells.push_back(std::move(outside));
    return OrderedPartition(degree, std::move(cells));
  }

  std::size_t degree() const { return cell_of_.size(); }
  std::size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t k) const { return cells_[k]; }
  std::size_t cell_of(Point x) const { return cell_of_[x]; }
  bool is_discrete() const { return cells_.size() == cell_of_.size(); }

  std::vector<std::size_t> shape() const {
    std::vector<std::size_t> out;
    out.reserve(cells_.size());
    for (const auto& c : cells_) out.push_back(c.size());
    return out;
  }

  bool same_shape(const OrderedPartition& other) const {
    if (cells_.size() != other.cells_.size()) return false;
    for (std::size_t k = 0; k < cells_.size(); ++k)
      if (cells_[k].size() != other.cells_[k].size()) return false;
    return true;
  }

  bool operator==(const OrderedPartition& other) const { return cells_ == other.cells_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<Cell> cells_;
  std::vector<std::size_t> cell_of_;
};

/// Every cell of `finer` lies inside a single cell of `coarser`.
inline bool is_finer(const OrderedPartition& finer, const OrderedPartition& coarser) {
  if (finer.degree() != coarser.degree()) throw std::invalid_argument("is_finer: degree mismatch");
  for (const auto& cell : finer.cells()) {
    std::size_t k = coarser.cell_of(cell.front());
    for (Point x : cell)
      if (coarser.cell_of(x) != k) return false;
  }
  return true;
}

/// Cells are the non-empty intersections, ordered lexicographically by
/// (cell index in p, cell index in q).
inline OrderedPartition meet(const OrderedPartition& p, const OrderedPartition& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("meet: degree mismatch");
  std::vector<OrderedPartition::Cell> cells;
  cells.reserve(p.size());
  std::vector<std::size_t> slot(q.size());
  std::vector<std::size_t> seen_in(q.size(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> used;
  for (std::size_t pi = 0; pi < p.size(); ++pi) {
    const auto& pc = p.cell(pi);
    // Bucket this P-cell by Q-cell index; points stay sorted.
    used.clear();
    for (Point x : pc) {
      std::size_t k = q.cell_of(x);
      if (seen_in[k] != pi) {
        seen_in[k] = pi;
        used.push_back(k);
      }
    }
    if (used.size() == 1) {
      cells.push_back(pc);
      continue;
    }
    std::sort(used.begin(), used.end());
    std::size_t first = cells.size();
    for (std::size_t i = 0; i < used.size(); ++i) slot[used[i]] = first + i;
    cells.resize(first + used.size());
    for (Point x : pc) cells[slot[q.cell_of(x)]].push_back(x);
  }
  return OrderedPartition(p.degree(), std::move(cells));
}

/// Cell k of the result is the image of cell k under g.
inline OrderedPartition apply(const OrderedPartition& p, const Permutation& g) {
  if (p.degree() != g.degree()) throw std::invalid_argument("apply: degree mismatch");
  std::vector<OrderedPartition::Cell> cells;
  cells.reserve(p.size());
  for (const auto& c : p.cells()) {
    OrderedPartition::Cell image;
    image.reserve(c.size());
    for (Point x : c) image.push_back(g[x]);
    cells.push_back(std::move(image));
  }
  return OrderedPartition(p.degree(), std::move(cells));
}

/// Points in singleton cells, in cell order.
inline std::vector<Point> singletons(const OrderedPartition& p) {
  std::vector<Point> out;
  for (const auto& c : p.cells())
    if (c.size() == 1) out.push_back(c.front());
  return out;
}

/// Moves `point` out of cell k into a new singleton cell at the end.
inline OrderedPartition split_cell(const OrderedPartition& p, std::size_t k, Point point) {
  if (k >= p.size() || point >= p.degree() || p.cell_of(point) != k)
    throw std::invalid_argument("split_cell: point is not in the given cell");
  if (p.cell(k).size() < 2) throw std::invalid_argument("split_cell: cell is already a singleton");
  std::vector<OrderedPartition::Cell> cells = p.cells();
  std::erase(cells[k], point);
  cells.push_back({point});
  return OrderedPartition(p.degree(), std::move(cells));
}

/// |Sym(P)|, the product of the factorials of the cell sizes.
inline boost::multiprecision::cpp_int sym_order(const OrderedPartition& p) {
  boost::multiprecision::cpp_int result = 1;
  for (const auto& c : p.cells())
    for (std::size_t i = 2; i <= c.size(); ++i) result *= i;
  return result;
}

/// "[1,2,3 | 4 | 5,7]" with 1-based points.
inline std::string to_string(const OrderedPartition& p) {
  std::string out = "[";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) out += " | ";
    for (std::size_t i = 0; i < p.cell(k).size(); ++i) {
      if (i) out += ',';
      out += std::to_string(p.cell(k)[i] + 1);
    }
  }
  return out + "]";
}

/// Parses "[a,b | c | d,e]" (1-based). Throws ParseError.
inline OrderedPartition parse_partition(std::string_view text, std::size_t degree) {
  detail::CycleScanner scan(text);
  scan.expect('[');
  std::vector<OrderedPartition::Cell> cells(1);
  std::vector<bool> used(degree, false);
  if (scan.peek() == ']') {
    scan.expect(']');
  } else {
    for (;;) {
      std::size_t at = (scan.skip_space(), scan.position());
      Point x = scan.point(degree);
      if (used[x]) throw ParseError("repeated point " + std::to_string(x + 1), at);
      used[x] = true;
      cells.back().push_back(x);
      char c = scan.peek();
      if (c == ',') {
        scan.expect(',');
      } else if (c == '|') {
        scan.expect('|');
        cells.emplace_back();
      } else if (c == ']') {
        scan.expect(']');
        break;
      } else {
        throw ParseError("expected ',', '|' or ']'", scan.position());
      }
    }
  }
  if (!scan.done()) throw ParseError("trailing characters", scan.position());
  try {
    return OrderedPartition(degree, std::move(cells));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace pbt
