#ifndef PARKGAME_COST_H_
#define PARKGAME_COST_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "parkgame/actions.h"
#include "parkgame/graph.h"
#include "parkgame/knowledge.h"

namespace parkgame {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();
// Absolute tolerance for every cost comparison.
inline constexpr double kCostTolerance = 1e-9;

struct CostWeights {
  double omega_r = 1.0;  // running (driving) cost weight
  double omega_t = 1.0;  // terminal (spot quality) cost weight
  bool operator==(const CostWeights&) const = default;
};

enum class EdgeCostMode { kUnit, kEuclidean };

// Everything needed to price a route and a target spot.
struct CostModel {
  CostWeights weights;
  EdgeCostMode edges = EdgeCostMode::kUnit;
  Point door;
};

// Throws std::invalid_argument unless both weights are positive and finite.
void validate(const CostWeights& weights);

double edge_cost(const ParkingLotGraph& graph, EdgeCostMode mode, NodeId a, NodeId b);
// Sum of edge costs along the route; 0 for a single node. Throws
// std::invalid_argument on non-adjacent consecutive nodes.
double running_cost(const ParkingLotGraph& graph, std::span<const NodeId> route,
                    EdgeCostMode mode);
// Euclidean distance from the node to the door.
double terminal_cost(const ParkingLotGraph& graph, NodeId node, Point door);
// omega_r * running + omega_t * terminal with the route's front as the
// current node and its back as the target.
double total_cost(const ParkingLotGraph& graph, std::span<const NodeId> route,
                  const CostModel& model);

struct BestResponse {
  double cost = kInfiniteCost;
  std::optional<NodeId> target;
  std::size_t position = 0;  // index of target within the traversal

  bool feasible() const { return target.has_value(); }
};

// Least-cost target along `traversal` under `arrangement`. Candidates are the
// spot nodes of the traversal that are available: visited ones by their
// revealed state, unvisited ones by the arrangement. The route to a candidate
// is the traversal prefix up to its first occurrence. Among candidates within
// kCostTolerance of the minimum the earliest one wins.
BestResponse best_response_cost(const ParkingLotGraph& graph, const Knowledge& knowledge,
                                std::span<const NodeId> traversal,
                                const LotAction& arrangement, const CostModel& model);

// Precomputed candidate list for one traversal, for evaluating it against many
// arrangements that share a node list.
class ResponseTable {
 public:
  ResponseTable(const ParkingLotGraph& graph, const Knowledge& knowledge,
                std::span<const NodeId> traversal, std::span<const NodeId> lot_nodes,
                const CostModel& model);

  BestResponse evaluate(std::span<const std::uint64_t> row) const;
  BestResponse evaluate(const LotActionSet& set, std::size_t action) const {
    return evaluate(set.row(action));
  }
  double value(const LotActionSet& set, std::size_t action) const {
    return evaluate(set.row(action)).cost;
  }

 private:
  struct Candidate {
    double cost;
    std::size_t position;
    NodeId node;
    std::ptrdiff_t bit;  // -1: known available
  };
  std::vector<Candidate> sorted_;
};

// Cheapest walk from `from` (arrived from `came_from`) to `to` that never
// reverses and never re-enters the entrance. When `via` is given the walk must
// arrive at `to` from `via`. Returns nullopt when unreachable.
std::optional<std::vector<NodeId>> shortest_route(const ParkingLotGraph& graph,
                                                  EdgeCostMode mode, NodeId from,
                                                  NodeId came_from, NodeId to,
                                                  NodeId via = kNoNode);

}  // namespace parkgame

#endif  // PARKGAME_COST_H_
