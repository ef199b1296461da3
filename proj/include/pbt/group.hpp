#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pbt/permutation.hpp"

namespace pbt {

/// A permutation group given by generators. No generators means the trivial group.
struct GeneratedGroup {
  std::size_t degree = 0;
  std::vector<Permutation> generators;

  GeneratedGroup() = default;
  GeneratedGroup(std::size_t n, std::vector<Permutation> gens) : degree(n), generators(std::move(gens)) {
    for (const auto& g : generators)
      if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
  }

  static GeneratedGroup trivial(std::size_t n) { return GeneratedGroup(n, {}); }
};

using PointSet = std::vector<Point>;

/// Orbit of `x` under `gens`, sorted ascending.
inline PointSet orbit(std::size_t degree, const std::vector<Permutation>& gens, Point x) {
  std::vector<bool> seen(degree, false);
  PointSet out{x};
  seen[x] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      Point y = g[out[i]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Orbit label per point: points share a label iff they share an orbit.
/// Labels are assigned in order of smallest orbit member.
inline std::vector<std::size_t> orbit_labels(std::size_t degree, const std::vector<Permutation>& gens) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(degree, unset);
  std::size_t next = 0;
  std::vector<Point> stack;
  for (Point start = 0; start < degree; ++start) {
    if (label[start] != unset) continue;
    label[start] = next;
    stack.assign(1, start);
    while (!stack.empty()) {
      Point x = stack.back();
      stack.pop_back();
      for (const auto& g : gens) {
        Point y = g[x];
        if (label[y] == unset) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

/// Orbits sorted ascending, listed by minimum element.
inline std::vector<PointSet> orbits(std::size_t degree, const std::vector<Permutation>& gens) {
  auto label = orbit_labels(degree, gens);
  std::size_t count = degree == 0 ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<PointSet> out(count);
  for (Point x = 0; x < degree; ++x) out[label[x]].push_back(x);
  return out;
}

inline std::vector<PointSet> orbits(const GeneratedGroup& g) { return orbits(g.degree, g.generators); }

inline GeneratedGroup symmetric_group(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Point> t(n), c(n);
    std::iota(t.begin(), t.end(), Point{0});
    std::swap(t[0], t[1]);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>((i + 1) % n);
    gens.emplace_back(std::move(t));
    if (n > 2) gens.emplace_back(std::move(c));
  }
  return GeneratedGroup(n, std::move(gens));
}

/// Image of S_m x S_m on the m*m grid, point (i,j) (0-based) encoded as i*m + j.
inline GeneratedGroup make_grid_group(std::size_t m) {
  if (m < 1) throw std::invalid_argument("grid size must be at least 1");
  auto lift = [m](const std::vector<Point>& rows, const std::vector<Point>& cols) {
    std::vector<Point> images(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) images[i * m + j] = static_cast<Point>(rows[i] * m + cols[j]);
    return Permutation(std::move(images));
  };
  std::vector<Point> id(m);
  std::iota(id.begin(), id.end(), Point{0});
  std::vector<Permutation> gens;
  for (const auto& s : symmetric_group(m).generators) {
    std::vector<Point> img(s.images().begin(), s.images().end());
    gens.push_back(lift(img, id));
    gens.push_back(lift(id, img));
  }
  return GeneratedGroup(m * m, std::move(gens));
}

/// S_a wr S_b on a*b points: b blocks {k*a, ..., k*a + a - 1} of size a.
inline GeneratedGroup make_wreath_product(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw std::invalid_argument("wreath product factors must be at least 1");
  const std::size_t n = a * b;
  std::vector<Permutation> gens;
  for (const auto& s : symmetric_group(a).generators) {
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), Point{0});
    for (std::size_t r = 0; r < a; ++r) images[r] = s[static_cast<Point>(r)];
    gens.emplace_back(std::move(images));
  }
  for (const auto& s : symmetric_group(b).generators) {
    std::vector<Point> images(n);
    for (std::size_t k = 0; k < b; ++k)
      for (std::size_t r = 0; r < a; ++r) images[k * a + r] = static_cast<Point>(s[static_cast<Point>(k)] * a + r);
    gens.emplace_back(std::move(images));
  }
  return GeneratedGroup(n, std::move(gens));
}

/// Generators p^-1 g p.
inline GeneratedGroup conjugate_group(const GeneratedGroup& group, const Permutation& p) {
  if (p.degree() != group.degree) throw std::invalid_argument("conjugating permutation degree mismatch");
  Permutation p_inv = p.inverse();
  std::vector<Permutation> gens;
  gens.reserve(group.generators.size());
  for (const auto& g : group.generators) gens.push_back(p_inv * g * p);
  return GeneratedGroup(group.degree, std::move(gens));
}

}  // namespace pbt
