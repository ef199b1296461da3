#pragma once

// Shared fixtures for the test and acceptance binaries.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pbt/pbt.hpp"

namespace pbt::fixtures {

inline Permutation cyc(const std::string& text, std::size_t n) { return parse_cycles(text, n); }
inline OrderedPartition part(const std::string& text, std::size_t n) { return parse_partition(text, n); }

/// Dihedral group of order 20 on 10 points.
inline GeneratedGroup dihedral10() {
  return GeneratedGroup(10, {cyc("(1,2,3,4,5,6,7,8,9,10)", 10), cyc("(2,10)(3,9)(4,8)(5,7)", 10)});
}

/// <(1 2 3), (4 5), (4 6)> on 6 points.
inline GeneratedGroup cycle_and_s3() {
  return GeneratedGroup(6, {cyc("(1,2,3)", 6), cyc("(4,5)", 6), cyc("(4,6)", 6)});
}

/// Two copies of S_3 swapped, plus a 3-cycle on 7,8,9.
inline GeneratedGroup two_triangles() {
  return GeneratedGroup(9, {cyc("(1,2)", 9), cyc("(1,3)", 9), cyc("(4,5)", 9), cyc("(4,6)", 9),
                            cyc("(1,4)(2,5)(3,6)", 9), cyc("(7,8,9)", 9)});
}

/// x -> a x + b over Z/p, points 1..p standing for 0..p-1.
inline GeneratedGroup affine_line(std::size_t p, std::size_t primitive_root) {
  std::vector<Point> shift(p), scale(p);
  for (std::size_t x = 0; x < p; ++x) {
    shift[x] = static_cast<Point>((x + 1) % p);
    scale[x] = static_cast<Point>((x * primitive_root) % p);
  }
  return GeneratedGroup(p, {Permutation(shift), Permutation(scale)});
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

/// Permutes a random subset of 2..n points; keeps random groups from being
/// almost always the full symmetric or alternating group.
inline Permutation random_sparse_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> support(n);
  std::iota(support.begin(), support.end(), Point{0});
  std::shuffle(support.begin(), support.end(), rng);
  std::size_t k = std::uniform_int_distribution<std::size_t>(2, std::max<std::size_t>(2, n))(rng);
  k = std::min(k, n);
  support.resize(k);
  std::vector<Point> moved = support;
  std::shuffle(moved.begin(), moved.end(), rng);
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  for (std::size_t i = 0; i < k; ++i) images[support[i]] = moved[i];
  return Permutation(std::move(images));
}

inline GeneratedGroup random_group(std::size_t n, std::size_t generators, std::mt19937_64& rng) {
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < generators; ++i)
    gens.push_back(rng() % 3 == 0 ? random_permutation(n, rng) : random_sparse_permutation(n, rng));
  return GeneratedGroup(n, std::move(gens));
}

inline PointSet random_subset(std::size_t n, std::mt19937_64& rng) {
  PointSet out;
  for (Point x = 0; x < n; ++x)
    if (rng() & 1) out.push_back(x);
  return out;
}

/// Random ordered partition with up to `max_cells` cells (none empty).
inline OrderedPartition random_partition(std::size_t n, std::size_t max_cells, std::mt19937_64& rng) {
  std::size_t cells = std::uniform_int_distribution<std::size_t>(1, std::min(n, max_cells))(rng);
  std::vector<Point> pts(n);
  std::iota(pts.begin(), pts.end(), Point{0});
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<OrderedPartition::Cell> out(cells);
  for (std::size_t k = 0; k < cells; ++k) out[k].push_back(pts[k]);
  for (std::size_t i = cells; i < n; ++i) out[rng() % cells].push_back(pts[i]);
  for (auto& c : out) std::sort(c.begin(), c.end());
  return OrderedPartition(n, std::move(out));
}

/// Cells as a sorted list of sets, ignoring their order.
inline std::vector<OrderedPartition::Cell> cell_set(const OrderedPartition& p) {
  auto cells = p.cells();
  std::sort(cells.begin(), cells.end());
  return cells;
}

}  // namespace pbt::fixtures
