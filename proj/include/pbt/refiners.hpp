#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pbt/equitable.hpp"
#include "pbt/orbital_graph.hpp"
#include "pbt/ordered_partition.hpp"
#include "pbt/stabilizer_chain.hpp"

namespace pbt {

/// Which refiners a group property contributes. Every mode includes Fixed.
enum class RefinerMode { Fixed, PreOrbital, DeepOrbital, FirstOrbital };

inline constexpr RefinerMode all_modes[] = {RefinerMode::Fixed, RefinerMode::PreOrbital, RefinerMode::DeepOrbital,
                                            RefinerMode::FirstOrbital};

inline std::string_view to_string(RefinerMode mode) {
  switch (mode) {
    case RefinerMode::Fixed: return "Fixed";
    case RefinerMode::PreOrbital: return "PreOrbital";
    case RefinerMode::DeepOrbital: return "DeepOrbital";
    case RefinerMode::FirstOrbital: return "FirstOrbital";
  }
  return "?";
}

inline std::optional<RefinerMode> parse_mode(std::string_view text) {
  for (RefinerMode m : all_modes)
    if (to_string(m) == text) return m;
  return std::nullopt;
}

/// A refiner for the partition backtrack driver.
///
/// record() refines a partition on the leftmost branch and remembers what
/// it used under the id `call`. replay() applies the same call to a
/// partition on another branch; nullopt means no element satisfying the
/// property maps the recorded partition to `q`. Ids are replayed in the
/// order they were recorded along each root-to-node path.
class Refiner {
 public:
  virtual ~Refiner() = default;
  virtual std::string name() const = 0;
  virtual OrderedPartition record(const OrderedPartition& p, std::size_t call) = 0;
  virtual std::optional<OrderedPartition> replay(const OrderedPartition& q, std::size_t call) = 0;
};

/// Meet with a partition every element of the property stabilizes.
class StaticPartitionRefiner : public Refiner {
 public:
  explicit StaticPartitionRefiner(OrderedPartition target) : target_(std::move(target)) {}

  std::string name() const override { return "Partition"; }
  OrderedPartition record(const OrderedPartition& p, std::size_t) override { return meet(p, target_); }
  std::optional<OrderedPartition> replay(const OrderedPartition& q, std::size_t) override { return meet(q, target_); }

 private:
  OrderedPartition target_;
};

/// Per-group state shared by that group's refiners: the stabilizer chain and
/// everything computed for a pointwise stabilizer, keyed by the exact
/// fixed-point sequence.
class GroupContext {
 public:
  struct FixedPointData {
    StabilizerChain chain;  ///< the group, based at the fixed points
    StabilizerChain stabilizer;
    OrderedPartition orbit_partition;  ///< orbits of the stabilizer, by minimum point
    std::optional<std::vector<OrbitalGraph>> graphs;
  };

  GroupContext(const GeneratedGroup& group, std::size_t size_limit = std::numeric_limits<std::size_t>::max(),
               std::ostream* trace = nullptr)
      : chain_(group), size_limit_(size_limit), trace_(trace) {}

  const StabilizerChain& chain() const { return chain_; }
  std::size_t degree() const { return chain_.degree(); }
  std::size_t graphs_built() const { return graphs_built_; }
  std::ostream* trace() const { return trace_; }

  FixedPointData& at(const std::vector<Point>& fixed) {
    auto it = cache_.find(fixed);
    if (it != cache_.end()) return it->second;
    StabilizerChain based = chain_.has_hint_prefix(fixed) ? chain_ : chain_.rebase(fixed);
    StabilizerChain stab = based.stabilizer_of(fixed);
    OrderedPartition orbit_partition(degree(), orbits(degree(), stab.generators()));
    return cache_.emplace(fixed, FixedPointData{std::move(based), std::move(stab), std::move(orbit_partition), {}})
        .first->second;
  }

  const std::vector<OrbitalGraph>& graphs_at(const std::vector<Point>& fixed) {
    auto& data = at(fixed);
    if (!data.graphs) {
      data.graphs = orbital_base(data.stabilizer, size_limit_);
      graphs_built_ += data.graphs->size();
    }
    return *data.graphs;
  }

  const std::vector<OrbitalGraph>& static_graphs() { return graphs_at({}); }

  /// Some group element mapping `recorded` to `current` pointwise.
  std::optional<Permutation> witness(const std::vector<Point>& recorded, const std::vector<Point>& current) {
    if (memo_ && memo_->recorded == recorded && memo_->current == current) return memo_->result;
    auto result = at(recorded).chain.map_tuple(recorded, current);
    memo_ = Memo{recorded, current, result};
    return result;
  }

 private:
  struct Memo {
    std::vector<Point> recorded, current;
    std::optional<Permutation> result;
  };

  StabilizerChain chain_;
  std::size_t size_limit_;
  std::ostream* trace_;
  std::map<std::vector<Point>, FixedPointData> cache_;
  std::optional<Memo> memo_;
  std::size_t graphs_built_ = 0;
};

/// Meet with an ordered orbit partition of the pointwise stabilizer of the
/// singleton cells. The cell order is fixed when recorded and carried to
/// other branches by a witness element.
class FixedRefiner : public Refiner {
 public:
  explicit FixedRefiner(std::shared_ptr<GroupContext> ctx) : ctx_(std::move(ctx)) {}

  std::string name() const override { return "Fixed"; }

  OrderedPartition record(const OrderedPartition& p, std::size_t call) override {
    auto fixed = singletons(p);
    const auto& data = ctx_->at(fixed);
    calls_[call] = std::move(fixed);
    return meet(p, data.orbit_partition);
  }

  std::optional<OrderedPartition> replay(const OrderedPartition& q, std::size_t call) override {
    const auto& fixed = calls_.at(call);
    auto w = ctx_->witness(fixed, singletons(q));
    if (!w) return std::nullopt;
    return meet(q, apply(ctx_->at(fixed).orbit_partition, *w));
  }

 private:
  std::shared_ptr<GroupContext> ctx_;
  std::unordered_map<std::size_t, std::vector<Point>> calls_;
};

/// Equitable refinement against the orbital base of the whole group, built once.
class OrbRefiner : public Refiner {
 public:
  explicit OrbRefiner(std::shared_ptr<GroupContext> ctx) : ctx_(std::move(ctx)) {}

  std::string name() const override { return "Orb"; }

  OrderedPartition record(const OrderedPartition& p, std::size_t) override {
    return equitable(ctx_->static_graphs(), p, ctx_->trace());
  }

  std::optional<OrderedPartition> replay(const OrderedPartition& q, std::size_t) override {
    return equitable(ctx_->static_graphs(), q);
  }

 private:
  std::shared_ptr<GroupContext> ctx_;
};

/// Equitable refinement against the orbital base of the pointwise
/// stabilizer of the singleton cells, rebuilt whenever they change.
class DeepOrbRefiner : public Refiner {
 public:
  explicit DeepOrbRefiner(std::shared_ptr<GroupContext> ctx) : ctx_(std::move(ctx)) {}

  std::string name() const override { return "DeepOrb"; }

  OrderedPartition record(const OrderedPartition& p, std::size_t call) override {
    auto fixed = singletons(p);
    const auto& graphs = ctx_->graphs_at(fixed);
    calls_[call] = std::move(fixed);
    return equitable(graphs, p, ctx_->trace());
  }

  std::optional<OrderedPartition> replay(const OrderedPartition& q, std::size_t call) override {
    const auto& fixed = calls_.at(call);
    auto w = ctx_->witness(fixed, singletons(q));
    if (!w) return std::nullopt;
    const auto& graphs = ctx_->graphs_at(fixed);
    if (graphs.empty()) return q;
    std::vector<OrbitalGraph> mapped;
    mapped.reserve(graphs.size());
    for (const auto& g : graphs) mapped.push_back(g.relabel(*w));
    return equitable(mapped, q);
  }

 private:
  std::shared_ptr<GroupContext> ctx_;
  std::unordered_map<std::size_t, std::vector<Point>> calls_;
};

/// Behaves as DeepOrb until the first call whose pointwise stabilizer has a
/// non-empty orbital base, then keeps that graph set for all later calls.
class FirstOrbRefiner : public Refiner {
 public:
  explicit FirstOrbRefiner(std::shared_ptr<GroupContext> ctx) : ctx_(std::move(ctx)) {}

  std::string name() const override { return "FirstOrb"; }

  /// Call id at which the graph set was frozen, if it has been.
  std::optional<std::size_t> frozen_at() const { return frozen_call_; }

  OrderedPartition record(const OrderedPartition& p, std::size_t call) override {
    if (frozen_call_) return equitable(*frozen_, p, ctx_->trace());
    auto fixed = singletons(p);
    const auto& graphs = ctx_->graphs_at(fixed);
    if (graphs.empty()) {
      unfrozen_[call] = std::move(fixed);
    } else {
      frozen_call_ = call;
      frozen_ = &graphs;
      frozen_fixed_ = fixed;
    }
    return equitable(graphs, p, ctx_->trace());
  }

  std::optional<OrderedPartition> replay(const OrderedPartition& q, std::size_t call) override {
    if (!frozen_call_ || call < *frozen_call_) {
      // Recorded graph sets were empty; only the witness can prune.
      if (!ctx_->witness(unfrozen_.at(call), singletons(q))) return std::nullopt;
      return q;
    }
    if (call == *frozen_call_) {
      auto w = ctx_->witness(frozen_fixed_, singletons(q));
      if (!w) return std::nullopt;
      // The last replay of the freezing call lies on the current search path.
      mapped_.clear();
      for (const auto& g : *frozen_) mapped_.push_back(g.relabel(*w));
    }
    return equitable(mapped_, q);
  }

 private:
  std::shared_ptr<GroupContext> ctx_;
  std::optional<std::size_t> frozen_call_;
  const std::vector<OrbitalGraph>* frozen_ = nullptr;
  std::vector<Point> frozen_fixed_;
  std::unordered_map<std::size_t, std::vector<Point>> unfrozen_;
  std::vector<OrbitalGraph> mapped_;
};

/// The refiners a group property contributes under `mode`, Fixed first.
inline std::vector<std::unique_ptr<Refiner>> group_refiners(const std::shared_ptr<GroupContext>& ctx,
                                                            RefinerMode mode) {
  std::vector<std::unique_ptr<Refiner>> out;
  out.push_back(std::make_unique<FixedRefiner>(ctx));
  switch (mode) {
    case RefinerMode::Fixed: break;
    case RefinerMode::PreOrbital: out.push_back(std::make_unique<OrbRefiner>(ctx)); break;
    case RefinerMode::DeepOrbital: out.push_back(std::make_unique<DeepOrbRefiner>(ctx)); break;
    case RefinerMode::FirstOrbital: out.push_back(std::make_unique<FirstOrbRefiner>(ctx)); break;
  }
  return out;
}

}  // namespace pbt
