#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <ostream>
#include <stdexcept>
#include <variant>
#include <vector>

#include "pbt/group.hpp"
#include "pbt/ordered_partition.hpp"
#include "pbt/refiners.hpp"
#include "pbt/stabilizer_chain.hpp"

namespace pbt {

struct InGroup {
  GeneratedGroup group;
};

struct StabilizesSet {
  PointSet set;
};

/// Every cell is mapped onto itself.
struct StabilizesPartition {
  OrderedPartition partition;
};

using Property = std::variant<InGroup, StabilizesSet, StabilizesPartition>;

struct Problem {
  std::size_t degree = 0;
  std::vector<Property> properties;
  RefinerMode mode = RefinerMode::FirstOrbital;
};

struct SearchOptions {
  std::size_t size_limit = std::numeric_limits<std::size_t>::max();
  /// Stop after this many nodes; 0 means no limit.
  std::uint64_t node_limit = 0;
  std::ostream* trace = nullptr;
  /// Called on every shape or witness prune with the branch points of the
  /// leftmost branch and of the pruned node, both of the node's depth.
  std::function<void(std::span<const Point> left, std::span<const Point> right)> on_prune;
};

struct SearchStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t solutions_found = 0;
  std::uint64_t prunes_by_shape = 0;
  std::uint64_t prunes_by_witness = 0;
  std::uint64_t prunes_by_orbit = 0;
  std::uint64_t graphs_built = 0;
  std::uint64_t max_depth = 0;

  bool operator==(const SearchStats&) const = default;
};

struct SearchResult {
  std::vector<Permutation> generators;
  Order order = 1;
  SearchStats stats;
  /// False when the node limit stopped the search early.
  bool completed = true;
};

struct RefineStep {
  std::size_t refiner = 0;
  std::size_t call = 0;
  OrderedPartition after;
};

struct RBaseLevel {
  std::vector<RefineStep> steps;
  OrderedPartition refined;
  /// Branch cell (index into `refined`) and point; absent on the last level.
  std::optional<std::size_t> branch_cell;
  Point branch_point = 0;
};

/// Leftmost-branch record: one level per node down to the discrete leaf.
struct RBase {
  std::vector<RBaseLevel> levels;

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
  const OrderedPartition& final_partition() const { return levels.back().refined; }
};

namespace detail {

inline void validate(const Problem& problem) {
  if (problem.properties.empty()) throw std::invalid_argument("problem has no properties");
  for (const auto& prop : problem.properties) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, InGroup>) {
            if (p.group.degree != problem.degree) throw std::invalid_argument("group degree mismatch");
          } else if constexpr (std::is_same_v<T, StabilizesSet>) {
            for (Point x : p.set)
              if (x >= problem.degree) throw std::invalid_argument("set point outside the domain");
          } else {
            if (p.partition.degree() != problem.degree) throw std::invalid_argument("partition degree mismatch");
          }
        },
        prop);
  }
}

inline OrderedPartition::Cell sorted_image(const std::vector<Point>& set, const Permutation& g) {
  OrderedPartition::Cell out;
  out.reserve(set.size());
  for (Point x : set) out.push_back(g[x]);
  std::sort(out.begin(), out.end());
  return out;
}

/// Set and partition properties; group membership is checked by the caller.
inline bool preserves(const Property& prop, const Permutation& g) {
  if (const auto* s = std::get_if<StabilizesSet>(&prop)) {
    std::vector<Point> set = s->set;
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return sorted_image(set, g) == set;
  }
  if (const auto* p = std::get_if<StabilizesPartition>(&prop)) {
    for (const auto& cell : p->partition.cells())
      if (sorted_image(cell, g) != cell) return false;
  }
  return true;
}

}  // namespace detail

/// Partition backtrack over Sym(degree) for the elements satisfying every
/// property. The leftmost branch is recorded once as an R-base; all other
/// branches replay its refiner calls against their own partition.
class Search {
 public:
  explicit Search(const Problem& problem, const SearchOptions& options = {})
      : problem_(problem), options_(options) {
    detail::validate(problem_);
    for (const auto& prop : problem_.properties) {
      if (const auto* in = std::get_if<InGroup>(&prop)) {
        auto ctx = std::make_shared<GroupContext>(in->group, options_.size_limit, options_.trace);
        contexts_.push_back(ctx);
        for (auto& r : group_refiners(ctx, problem_.mode)) refiners_.push_back(std::move(r));
      } else if (const auto* set = std::get_if<StabilizesSet>(&prop)) {
        refiners_.push_back(std::make_unique<StaticPartitionRefiner>(OrderedPartition::from_set(problem_.degree, set->set)));
      } else {
        refiners_.push_back(std::make_unique<StaticPartitionRefiner>(std::get<StabilizesPartition>(prop).partition));
      }
    }
    build_rbase();
  }

  const RBase& rbase() const { return rbase_; }

  /// Whether g satisfies every property.
  bool verify(const Permutation& g) const {
    if (g.degree() != problem_.degree) return false;
    std::size_t group_index = 0;
    for (const auto& prop : problem_.properties) {
      if (std::holds_alternative<InGroup>(prop)) {
        if (!contexts_[group_index++]->chain().contains(g)) return false;
      } else if (!detail::preserves(prop, g)) {
        return false;
      }
    }
    return true;
  }

  SearchResult run() {
    stats_ = {};
    found_ = {};
    found_chain_ = StabilizerChain(GeneratedGroup::trivial(problem_.degree));
    aborted_ = false;
    explore(0, OrderedPartition::trivial(problem_.degree));
    SearchResult result;
    result.generators = found_;
    result.order = found_chain_.order();
    result.stats = stats_;
    for (const auto& ctx : contexts_) result.stats.graphs_built += ctx->graphs_built();
    result.completed = !aborted_;
    return result;
  }

 private:
  OrderedPartition refine_left(OrderedPartition p, std::vector<RefineStep>& steps) {
    for (;;) {
      const std::size_t before = p.size();
      for (std::size_t r = 0; r < refiners_.size() && !p.is_discrete(); ++r) {
        p = refiners_[r]->record(p, next_call_);
        steps.push_back({r, next_call_++, p});
      }
      if (p.size() == before || p.is_discrete()) return p;
    }
  }

  void build_rbase() {
    OrderedPartition p = OrderedPartition::trivial(problem_.degree);
    for (;;) {
      RBaseLevel level;
      p = refine_left(std::move(p), level.steps);
      level.refined = p;
      if (p.is_discrete()) {
        rbase_.levels.push_back(std::move(level));
        return;
      }
      // Smallest non-singleton cell, lowest index on ties; its minimum point.
      std::size_t best = p.size();
      for (std::size_t k = 0; k < p.size(); ++k)
        if (p.cell(k).size() >= 2 && (best == p.size() || p.cell(k).size() < p.cell(best).size())) best = k;
      level.branch_cell = best;
      level.branch_point = p.cell(best).front();
      p = split_cell(p, best, level.branch_point);
      rbase_.levels.push_back(std::move(level));
    }
  }

  std::optional<OrderedPartition> replay(OrderedPartition q, const std::vector<RefineStep>& steps) {
    for (const auto& step : steps) {
      auto next = refiners_[step.refiner]->replay(q, step.call);
      if (!next) {
        ++stats_.prunes_by_witness;
        report_prune();
        return std::nullopt;
      }
      if (!next->same_shape(step.after)) {
        ++stats_.prunes_by_shape;
        report_prune();
        return std::nullopt;
      }
      q = std::move(*next);
    }
    return q;
  }

  void report_prune() const {
    if (!options_.on_prune) return;
    std::vector<Point> left;
    for (std::size_t d = 0; d < path_.size(); ++d) left.push_back(rbase_.levels[d].branch_point);
    options_.on_prune(left, path_);
  }

  void explore(std::size_t depth, OrderedPartition q) {
    if (options_.node_limit && stats_.nodes_visited >= options_.node_limit) {
      aborted_ = true;
      return;
    }
    ++stats_.nodes_visited;
    stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, depth);
    const RBaseLevel& level = rbase_.levels[depth];
    auto refined = replay(std::move(q), level.steps);
    if (!refined) return;
    if (!level.branch_cell) {
      accept_leaf(*refined);
      return;
    }
    const std::size_t k = *level.branch_cell;
    const OrderedPartition::Cell candidates = refined->cell(k);
    std::vector<Point> explored;
    for (Point b : candidates) {
      if (aborted_) return;
      if (depth == 0 && !explored.empty() && in_explored_orbit(b, explored)) {
        ++stats_.prunes_by_orbit;
        continue;
      }
      path_.push_back(b);
      explore(depth + 1, split_cell(*refined, k, b));
      path_.pop_back();
      if (depth == 0) explored.push_back(b);
    }
  }

  /// b lies in the orbit of an already explored branch value under the
  /// group generated by the solutions found so far.
  bool in_explored_orbit(Point b, const std::vector<Point>& explored) const {
    if (found_.empty()) return false;
    auto label = orbit_labels(problem_.degree, found_);
    return std::any_of(explored.begin(), explored.end(), [&](Point e) { return label[e] == label[b]; });
  }

  void accept_leaf(const OrderedPartition& q) {
    const OrderedPartition& p = rbase_.final_partition();
    std::vector<Point> images(problem_.degree);
    for (std::size_t k = 0; k < p.size(); ++k) images[p.cell(k).front()] = q.cell(k).front();
    Permutation g(std::move(images));
    if (!verify(g)) return;
    ++stats_.solutions_found;
    if (found_chain_.contains(g)) return;
    found_.push_back(std::move(g));
    found_chain_ = StabilizerChain(GeneratedGroup(problem_.degree, found_));
  }

  Problem problem_;
  SearchOptions options_;
  std::vector<std::shared_ptr<GroupContext>> contexts_;
  std::vector<std::unique_ptr<Refiner>> refiners_;
  RBase rbase_;
  std::size_t next_call_ = 0;

  SearchStats stats_;
  std::vector<Permutation> found_;
  StabilizerChain found_chain_;
  std::vector<Point> path_;
  bool aborted_ = false;
};

inline SearchResult solve(const Problem& problem, const SearchOptions& options = {}) {
  return Search(problem, options).run();
}

inline RBase build_rbase(const Problem& problem, const SearchOptions& options = {}) {
  return Search(problem, options).rbase();
}

inline bool verify(const Problem& problem, const Permutation& g) {
  detail::validate(problem);
  if (g.degree() != problem.degree) return false;
  for (const auto& prop : problem.properties) {
    if (const auto* in = std::get_if<InGroup>(&prop)) {
      if (in->group.degree != g.degree() || !StabilizerChain(in->group).contains(g)) return false;
    } else if (!detail::preserves(prop, g)) {
      return false;
    }
  }
  return true;
}

inline Problem set_stabilizer_problem(const GeneratedGroup& group, PointSet set, RefinerMode mode) {
  return Problem{group.degree, {InGroup{group}, StabilizesSet{std::move(set)}}, mode};
}

inline Problem partition_stabilizer_problem(const GeneratedGroup& group, OrderedPartition partition, RefinerMode mode) {
  return Problem{group.degree, {InGroup{group}, StabilizesPartition{std::move(partition)}}, mode};
}

inline Problem intersection_problem(const GeneratedGroup& g, const GeneratedGroup& h, RefinerMode mode) {
  if (g.degree != h.degree) throw std::invalid_argument("intersection: degree mismatch");
  return Problem{g.degree, {InGroup{g}, InGroup{h}}, mode};
}

inline SearchResult set_stabilizer(const GeneratedGroup& group, PointSet set, RefinerMode mode,
                                   const SearchOptions& options = {}) {
  return solve(set_stabilizer_problem(group, std::move(set), mode), options);
}

inline SearchResult partition_stabilizer(const GeneratedGroup& group, OrderedPartition partition, RefinerMode mode,
                                         const SearchOptions& options = {}) {
  return solve(partition_stabilizer_problem(group, std::move(partition), mode), options);
}

inline SearchResult intersection(const GeneratedGroup& g, const GeneratedGroup& h, RefinerMode mode,
                                 const SearchOptions& options = {}) {
  return solve(intersection_problem(g, h, mode), options);
}

}  // namespace pbt
