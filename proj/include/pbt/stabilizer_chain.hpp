#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pbt/group.hpp"
#include "pbt/permutation.hpp"

namespace pbt {

using Order = boost::multiprecision::cpp_int;

struct SiftResult {
  Permutation residue;
  bool is_member = false;
};

/// Base and strong generating set with explicit transversals.
///
/// Level i stores the base point b_i, the strong generators fixing
/// b_0..b_{i-1}, the orbit of b_i under them and, for every orbit point x,
/// a witness u_x with b_i^(u_x) = x.
class StabilizerChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    std::vector<std::optional<Permutation>> transversal;
    std::vector<std::optional<Permutation>> transversal_inverse;

    Level(std::size_t degree, Point b) : base(b), orbit{b}, transversal(degree), transversal_inverse(degree) {
      transversal[b] = Permutation::identity(degree);
      transversal_inverse[b] = Permutation::identity(degree);
    }

    bool in_orbit(Point x) const { return transversal[x].has_value(); }

    void add_generator(const Permutation& g) {
      generators.push_back(g);
      // Existing points only need the new generator; new points need all.
      std::size_t old_size = orbit.size();
      for (std::size_t i = 0; i < old_size; ++i) extend(orbit[i], g);
      for (std::size_t i = old_size; i < orbit.size(); ++i)
        for (const auto& s : generators) extend(orbit[i], s);
    }

   private:
    void extend(Point x, const Permutation& s) {
      Point y = s[x];
      if (transversal[y]) return;
      transversal[y] = *transversal[x] * s;
      transversal_inverse[y] = transversal[y]->inverse();
      orbit.push_back(y);
    }
  };

  StabilizerChain() = default;

  /// Deterministic Schreier-Sims. The base starts with `base_hint` (points
  /// fixed by the relevant stabilizer are skipped), then smallest moved points.
  explicit StabilizerChain(const GeneratedGroup& group, std::span<const Point> base_hint = {})
      : degree_(group.degree), hint_(base_hint.begin(), base_hint.end()) {
    for (Point b : hint_) levels_.emplace_back(degree_, b);
    std::vector<Permutation> gens;
    for (const auto& g : group.generators)
      if (!g.is_identity()) gens.push_back(g);
    for (const auto& g : gens) {
      bool moves_base = std::any_of(levels_.begin(), levels_.end(), [&](const Level& l) { return g[l.base] != l.base; });
      if (!moves_base) levels_.emplace_back(degree_, g.first_moved_point());
    }
    for (const auto& g : gens) {
      for (std::size_t i = 0; i < levels_.size(); ++i) {
        levels_[i].add_generator(g);
        if (g[levels_[i].base] != levels_[i].base) break;
      }
    }
    schreier_sims();
    strip_redundant_levels();
  }

  std::size_t degree() const { return degree_; }
  std::span<const Level> levels() const { return levels_; }
  std::span<const Point> hint() const { return hint_; }

  std::vector<Point> base() const {
    std::vector<Point> out;
    for (const auto& l : levels_) out.push_back(l.base);
    return out;
  }

  /// Strong generators of the whole group.
  std::vector<Permutation> generators() const {
    return levels_.empty() ? std::vector<Permutation>{} : levels_.front().generators;
  }

  GeneratedGroup group() const { return GeneratedGroup(degree_, generators()); }

  Order order() const {
    Order result = 1;
    for (const auto& l : levels_) result *= l.orbit.size();
    return result;
  }

  SiftResult sift(const Permutation& p) const {
    if (p.degree() != degree_) throw std::invalid_argument("sift: degree mismatch");
    auto [residue, drop] = sift_from(p, 0);
    bool member = drop == levels_.size() && residue.is_identity();
    return {std::move(residue), member};
  }

  bool contains(const Permutation& p) const { return sift(p).is_member; }

  /// Uniformly random group element: one random transversal element per level.
  template <class Rng>
  Permutation random_element(Rng& rng) const {
    Permutation g = Permutation::identity(degree_);
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
      std::uniform_int_distribution<std::size_t> pick(0, it->orbit.size() - 1);
      g = g * *it->transversal[it->orbit[pick(rng)]];
    }
    return g;
  }

  /// Chain for the same group whose base starts with `base_hint`. Uses
  /// randomized Schreier-Sims that stops once the known order is reached,
  /// so the result is exact; the seed only affects the generators chosen.
  StabilizerChain rebase(std::span<const Point> base_hint, std::uint64_t seed = 0x5eed) const {
    StabilizerChain out;
    out.degree_ = degree_;
    out.hint_.assign(base_hint.begin(), base_hint.end());
    for (Point b : out.hint_) out.levels_.emplace_back(degree_, b);
    const Order target = order();
    std::mt19937_64 rng(seed);
    // Seed with the strong generators so small groups finish without sampling.
    std::vector<Permutation> pending = generators();
    std::size_t next = 0;
    while (out.order() < target) {
      Permutation g = next < pending.size() ? pending[next++] : random_element(rng);
      out.absorb(g);
    }
    out.strip_redundant_levels();
    return out;
  }

  /// Chain of the pointwise stabilizer of the first `depth` base points.
  StabilizerChain suffix(std::size_t depth) const {
    StabilizerChain out;
    out.degree_ = degree_;
    if (depth < levels_.size()) out.levels_.assign(levels_.begin() + static_cast<std::ptrdiff_t>(depth), levels_.end());
    return out;
  }

  /// Chain of the pointwise stabilizer of `points`, in the order given.
  StabilizerChain stabilizer_of(std::span<const Point> points) const {
    StabilizerChain based = has_hint_prefix(points) ? *this : rebase(points);
    return based.suffix(based.levels_for_prefix(points.size()));
  }

  /// Some g in the group with from[i]^g == to[i], or nullopt. `from` must be
  /// a prefix of the hint this chain was built with.
  std::optional<Permutation> map_tuple(std::span<const Point> from, std::span<const Point> to) const {
    if (from.size() != to.size()) throw std::invalid_argument("map_tuple: length mismatch");
    if (!has_hint_prefix(from)) throw std::invalid_argument("map_tuple: chain not based at the source tuple");
    std::vector<Point> target(to.begin(), to.end());
    // g = s * u_k * ... * u_1, built from the right.
    Permutation right = Permutation::identity(degree_);
    std::size_t level = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (level < levels_.size() && levels_[level].base == from[i]) {
        const Level& l = levels_[level];
        if (!l.in_orbit(target[i])) return std::nullopt;
        const Permutation& u = *l.transversal[target[i]];
        const Permutation& u_inv = *l.transversal_inverse[target[i]];
        for (std::size_t j = i + 1; j < target.size(); ++j) target[j] = u_inv[target[j]];
        right = u * right;
        ++level;
      } else if (target[i] != from[i]) {
        return std::nullopt;
      }
    }
    return right;
  }

  bool has_hint_prefix(std::span<const Point> points) const {
    return points.size() <= hint_.size() && std::equal(points.begin(), points.end(), hint_.begin());
  }

 private:
  std::size_t levels_for_prefix(std::size_t prefix) const {
    std::size_t count = 0;
    while (count < levels_.size() &&
           std::find(hint_.begin(), hint_.begin() + static_cast<std::ptrdiff_t>(prefix), levels_[count].base) !=
               hint_.begin() + static_cast<std::ptrdiff_t>(prefix))
      ++count;
    return count;
  }

  std::pair<Permutation, std::size_t> sift_from(Permutation r, std::size_t start) const {
    for (std::size_t i = start; i < levels_.size(); ++i) {
      Point y = r[levels_[i].base];
      if (!levels_[i].in_orbit(y)) return {std::move(r), i};
      r = r * *levels_[i].transversal_inverse[y];
    }
    return {std::move(r), levels_.size()};
  }

  /// Adds the sift residue of g (if any) as a strong generator.
  void absorb(const Permutation& g) {
    auto [residue, drop] = sift_from(g, 0);
    if (drop == levels_.size() && residue.is_identity()) return;
    add_residue(residue, 0, drop);
  }

  void add_residue(const Permutation& residue, std::size_t from_level, std::size_t drop) {
    if (drop == levels_.size()) levels_.emplace_back(degree_, residue.first_moved_point());
    for (std::size_t l = from_level; l <= drop; ++l) levels_[l].add_generator(residue);
  }

  void schreier_sims() {
    if (levels_.empty()) return;
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool restarted = false;
      const std::size_t level = static_cast<std::size_t>(i);
      for (std::size_t oi = 0; oi < levels_[level].orbit.size() && !restarted; ++oi) {
        for (std::size_t si = 0; si < levels_[level].generators.size(); ++si) {
          const Level& l = levels_[level];
          Point x = l.orbit[oi];
          const Permutation& s = l.generators[si];
          Point y = s[x];
          Permutation h = *l.transversal[x] * s * *l.transversal_inverse[y];
          if (h.is_identity()) continue;
          auto [residue, drop] = sift_from(std::move(h), level + 1);
          if (drop < levels_.size() || !residue.is_identity()) {
            add_residue(residue, level + 1, drop);
            i = static_cast<std::ptrdiff_t>(drop);
            restarted = true;
            break;
          }
        }
      }
      if (!restarted) --i;
    }
  }

  void strip_redundant_levels() {
    std::erase_if(levels_, [](const Level& l) { return l.orbit.size() == 1; });
  }

  std::size_t degree_ = 0;
  std::vector<Point> hint_;
  std::vector<Level> levels_;
};

inline StabilizerChain stabilizer_chain(const GeneratedGroup& group, std::span<const Point> base_hint = {}) {
  return StabilizerChain(group, base_hint);
}

/// Generators of the pointwise stabilizer of `points`.
inline GeneratedGroup point_stabilizer(const StabilizerChain& chain, std::span<const Point> points) {
  if (points.empty()) return chain.group();
  return chain.stabilizer_of(points).group();
}

inline SiftResult sift(const StabilizerChain& chain, const Permutation& p) { return chain.sift(p); }

/// Some g with from[i]^g == to[i], or nullopt. Rebases when needed.
inline std::optional<Permutation> element_mapping_tuple(const StabilizerChain& chain, std::span<const Point> from,
                                                        std::span<const Point> to) {
  if (chain.has_hint_prefix(from)) return chain.map_tuple(from, to);
  return chain.rebase(from).map_tuple(from, to);
}

inline bool is_transitive(const StabilizerChain& chain) {
  if (chain.degree() <= 1) return true;
  return chain.levels().size() > 0 && chain.levels()[0].orbit.size() == chain.degree();
}

/// Transitive, and the stabilizer of one point is transitive on the rest.
inline bool is_2_transitive(const StabilizerChain& chain) {
  const std::size_t n = chain.degree();
  if (n < 2 || !is_transitive(chain)) return false;
  auto levels = chain.levels();
  if (n == 2) return true;
  // Level 0 is transitive, so its stabilizer is the point stabilizer of levels[0].base.
  return levels.size() > 1 && levels[1].orbit.size() == n - 1;
}

inline bool is_2_transitive(const GeneratedGroup& group) { return is_2_transitive(StabilizerChain(group)); }

}  // namespace pbt
