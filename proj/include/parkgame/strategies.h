#ifndef PARKGAME_STRATEGIES_H_
#define PARKGAME_STRATEGIES_H_

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "parkgame/actions.h"
#include "parkgame/cost.h"
#include "parkgame/graph.h"
#include "parkgame/knowledge.h"
#include "parkgame/sampling.h"

namespace parkgame {

enum class StrategyKind { kSecure, kGuarded, kPrudent };

std::string_view to_string(StrategyKind kind);
// Throws std::invalid_argument for unknown names.
StrategyKind parse_strategy_kind(std::string_view name);

// What a strategy may look at in one decision cycle. Ground truth is
// deliberately absent.
struct PlanningState {
  const ParkingLotGraph& graph;
  const Knowledge& knowledge;
  NodeId current = kNoNode;
  NodeId came_from = kNoNode;
  const CostModel& cost;
};

struct Decision {
  enum class Kind { kPark, kProceed, kNoSpot };

  Kind kind = Kind::kNoSpot;
  NodeId park_node = kNoNode;
  NodeId next_node = kNoNode;
  // Secure: the chosen traversal a_v(k). Prudent: the route being followed.
  VehicleAction planned_action;
  // Guarded: the chosen direction v_next(k).
  NodeId direction = kNoNode;
  // Worst-case cost estimate behind the decision (infinite when none).
  double value = kInfiniteCost;

  bool operator==(const Decision&) const = default;
};

std::string_view to_string(Decision::Kind kind);

struct MinimaxResult {
  double value = kInfiniteCost;
  std::size_t action = 0;              // argmin traversal
  std::size_t worst_arrangement = 0;   // argmax arrangement for that traversal
};

// min over traversals of max over arrangements of the best-response cost.
// Ties go to the earliest index within kCostTolerance.
MinimaxResult secure_value(const ParkingLotGraph& graph, const Knowledge& knowledge,
                           std::span<const VehicleAction> traversals,
                           const LotActionSet& arrangements, const CostModel& model);

struct DirectionValue {
  NodeId next = kNoNode;
  double value = kInfiniteCost;
  std::size_t worst_arrangement = 0;
};

// For each direction group: max over arrangements of the best response within
// the group.
std::vector<DirectionValue> guarded_value(const ParkingLotGraph& graph,
                                          const Knowledge& knowledge,
                                          std::span<const VehicleAction> traversals,
                                          std::span<const DirectionGroup> groups,
                                          const LotActionSet& arrangements,
                                          const CostModel& model);

struct SecureGuardedValues {
  double secure = kInfiniteCost;   // J-bar(k)
  double guarded = kInfiniteCost;  // J-underbar(k)
};

SecureGuardedValues secure_guarded_values(const ParkingLotGraph& graph,
                                          const Knowledge& knowledge,
                                          std::span<const VehicleAction> traversals,
                                          const LotActionSet& arrangements,
                                          const CostModel& model);

// Exact A_v(k) and A_p(k) for a planning state, or sampled subsets of them
// when `sampling` is set. The random stream depends only on the sampling seed
// and the cycle.
struct ActionSpaces {
  std::vector<VehicleAction> traversals;
  LotActionSet arrangements;
};

// `per_direction` selects the group-preserving vehicle sampler used by the
// guarded strategy.
ActionSpaces action_spaces(const PlanningState& state, TraversalCache& cache,
                           const std::optional<SamplingConfig>& sampling, bool per_direction);

Decision secure_decide(const PlanningState& state, TraversalCache& cache,
                       const std::optional<SamplingConfig>& sampling = std::nullopt);
Decision guarded_decide(const PlanningState& state, TraversalCache& cache,
                        const std::optional<SamplingConfig>& sampling = std::nullopt);

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual StrategyKind kind() const = 0;
  virtual Decision decide(const PlanningState& state) = 0;
};

class SecureStrategy final : public Strategy {
 public:
  SecureStrategy(const ParkingLotGraph& graph, std::optional<SamplingConfig> sampling)
      : cache_(graph), sampling_(sampling) {}
  StrategyKind kind() const override { return StrategyKind::kSecure; }
  Decision decide(const PlanningState& state) override {
    return secure_decide(state, cache_, sampling_);
  }

 private:
  TraversalCache cache_;
  std::optional<SamplingConfig> sampling_;
};

class GuardedStrategy final : public Strategy {
 public:
  GuardedStrategy(const ParkingLotGraph& graph, std::optional<SamplingConfig> sampling)
      : cache_(graph), sampling_(sampling) {}
  StrategyKind kind() const override { return StrategyKind::kGuarded; }
  Decision decide(const PlanningState& state) override {
    return guarded_decide(state, cache_, sampling_);
  }

 private:
  TraversalCache cache_;
  std::optional<SamplingConfig> sampling_;
};

// Heuristic baseline. Scans rows starting with the one closest to the door,
// passes the first available spot, then takes a nearer spot if one follows;
// otherwise drives back around towards the passed spot and parks at the first
// available spot it meets. Keeps memory across cycles, so one instance per
// episode.
class PrudentStrategy final : public Strategy {
 public:
  explicit PrudentStrategy(const ParkingLotGraph& graph, Point door);
  StrategyKind kind() const override { return StrategyKind::kPrudent; }
  Decision decide(const PlanningState& state) override;

 private:
  enum class Mode { kSearching, kHoping, kReturning };

  Decision searching(const PlanningState& s);
  Decision hoping(const PlanningState& s);
  Decision returning(const PlanningState& s);
  Decision route_to(const PlanningState& s, NodeId target, NodeId via);
  bool nearer(const ParkingLotGraph& g, NodeId a, NodeId b) const;

  Point door_;
  std::vector<int> row_order_;
  std::vector<bool> row_scanned_;
  Mode mode_ = Mode::kSearching;
  NodeId skipped_ = kNoNode;
  NodeId run_best_ = kNoNode;
  NodeId goal_ = kNoNode;
  // Backtracking to the skipped spot takes any free spot on the way; going
  // back for a remembered nearer spot does not settle for a worse one.
  bool take_any_ = true;
};

std::unique_ptr<Strategy> make_strategy(StrategyKind kind, const ParkingLotGraph& graph,
                                        const CostModel& cost,
                                        std::optional<SamplingConfig> sampling);

}  // namespace parkgame

#endif  // PARKGAME_STRATEGIES_H_
