#pragma once

// Random benchmark instances: grid set stabilizers and intersections with
// conjugated wreath products. Instance i uses seed base_seed + i.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

#include "pbt/backtrack.hpp"
#include "pbt/group.hpp"
#include "pbt/report.hpp"
#include "pbt/stabilizer_chain.hpp"

namespace pbt {

enum class GridVariant { Random, RowBalanced };

inline std::optional<GridVariant> parse_grid_variant(std::string_view text) {
  if (text == "random") return GridVariant::Random;
  if (text == "row-balanced") return GridVariant::RowBalanced;
  return std::nullopt;
}

/// Random subset of the m x m grid: floor(m^2/2) points overall, or
/// floor(m/2) points in every row.
inline PointSet grid_subset(std::size_t m, GridVariant variant, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PointSet out;
  if (variant == GridVariant::Random) {
    PointSet all(m * m);
    std::iota(all.begin(), all.end(), Point{0});
    std::shuffle(all.begin(), all.end(), rng);
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m * m / 2));
  } else {
    PointSet row(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::iota(row.begin(), row.end(), static_cast<Point>(i * m));
      std::shuffle(row.begin(), row.end(), rng);
      out.insert(out.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(m / 2));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Uniform element of Sym(n), drawn one transversal element per chain level.
inline Permutation random_permutation(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (n < 2) return Permutation::identity(n);
  return StabilizerChain(symmetric_group(n)).random_element(rng);
}

struct BenchInstance {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Problem problem;
};

inline std::vector<BenchInstance> grid_instances(std::size_t m, GridVariant variant, std::size_t count,
                                                 RefinerMode mode, std::uint64_t base_seed) {
  GeneratedGroup grid = make_grid_group(m);
  std::vector<BenchInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t seed = base_seed + i;
    out.push_back({i, seed, set_stabilizer_problem(grid, grid_subset(m, variant, seed), mode)});
  }
  return out;
}

/// `group` intersected with S_a wr S_b conjugated by a random element.
inline std::vector<BenchInstance> intersect_instances(const GeneratedGroup& group, std::size_t a, std::size_t b,
                                                      std::size_t count, RefinerMode mode,
                                                      std::uint64_t base_seed) {
  if (a * b != group.degree) throw std::invalid_argument("wreath product degree does not match the group");
  GeneratedGroup wreath = make_wreath_product(a, b);
  std::vector<BenchInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t seed = base_seed + i;
    GeneratedGroup conj = conjugate_group(wreath, random_permutation(group.degree, seed));
    out.push_back({i, seed, intersection_problem(group, conj, mode)});
  }
  return out;
}

/// Solves every instance, `threads` at a time; records come back in
/// instance order.
inline std::vector<StatsRecord> run_bench(const std::vector<BenchInstance>& instances, const SearchOptions& options,
                                          std::size_t threads = 1) {
  std::vector<StatsRecord> records(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      const auto& inst = instances[i];
      auto start = std::chrono::steady_clock::now();
      SearchResult result = solve(inst.problem, options);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      records[i] = make_record(inst.index, inst.seed, inst.problem.mode, inst.problem.degree, result, ms);
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, instances.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return records;
}

}  // namespace pbt
