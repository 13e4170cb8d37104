#ifndef PARKGAME_SIM_H_
#define PARKGAME_SIM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "parkgame/cost.h"
#include "parkgame/graph.h"
#include "parkgame/knowledge.h"
#include "parkgame/sampling.h"
#include "parkgame/strategies.h"

namespace parkgame {

// A strategy or simulator invariant was broken (e.g. parking on an occupied
// spot). Always a bug, never an input problem.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Left is the -y side of a horizontal lane, right the +y side.
enum class Side { kLeft, kRight };
std::string_view to_string(Side side);

// Per-spot occupancy, hidden from strategies. Spot index 2*node + side for
// spot node ids in ascending order.
class GroundTruth {
 public:
  GroundTruth() = default;
  explicit GroundTruth(std::vector<bool> available) : available_(std::move(available)) {}

  static GroundTruth all_available(const ParkingLotGraph& graph) {
    return GroundTruth(std::vector<bool>(graph.spot_count(), true));
  }

  std::size_t spot_count() const { return available_.size(); }
  bool available(NodeId node, Side side) const;
  NodeState node_state(NodeId node) const;
  int available_count() const;
  int occupied_count() const { return static_cast<int>(spot_count()) - available_count(); }
  const std::vector<bool>& bits() const { return available_; }

  bool operator==(const GroundTruth&) const = default;

 private:
  std::vector<bool> available_;
};

struct Scenario {
  std::string id = "scenario";
  LotLayout layout;
  GroundTruth truth;
  CostWeights weights{1.0, 10.0};
  EdgeCostMode edge_cost = EdgeCostMode::kUnit;
  StrategyKind strategy = StrategyKind::kGuarded;
  std::optional<SamplingConfig> sampling;

  CostModel cost_model() const { return {weights, edge_cost, layout.door}; }
  bool operator==(const Scenario&) const = default;
};

// Throws std::invalid_argument when the scenario is inconsistent.
void validate(const Scenario& scenario);

struct CycleRecord {
  int cycle = 0;
  NodeId node = kNoNode;
  int n_available = 0;
  int n_occupied = 0;
  int revealed_spots = 0;
  Decision decision;
};

enum class Outcome { kParked, kNoSpotFailure };
std::string_view to_string(Outcome outcome);

struct EpisodeResult {
  std::vector<NodeId> path;
  std::optional<NodeId> parked_node;
  std::optional<Side> parked_side;
  double total_cost = kInfiniteCost;
  int cycles = 0;
  std::vector<CycleRecord> log;
  Outcome outcome = Outcome::kNoSpotFailure;
  // Number of per-spot ground-truth reads made by the simulator.
  std::size_t truth_reads = 0;
};

// Both flanking spots of a spot node; nullopt for other nodes.
std::optional<SpotObservation> perceive(const ParkingLotGraph& graph, const GroundTruth& truth,
                                        NodeId node);

// Realized cost of a finished episode: omega_r * edge costs along `path` plus
// omega_t * door distance of `parked`, which must be the last path node.
// Throws IntegrityError when the spot is occupied in truth.
double score(const ParkingLotGraph& graph, std::span<const NodeId> path, NodeId parked,
             const Scenario& scenario);

// Runs decision-execution cycles until the vehicle parks or no spot is left.
EpisodeResult run_episode(const Scenario& scenario);

// Cycle budget: nodes x horizontal lanes.
int cycle_bound(const ParkingLotGraph& graph);

// Occupies each spot with probability `fill_rate`, then swaps uniformly until
// exactly round(fill_rate * spots) are occupied. Door defaults to the top
// corner on the entrance side.
Scenario random_scenario(const LotLayout& layout, double fill_rate, std::uint64_t seed);
Point default_door(const LotLayout& layout);

}  // namespace parkgame

#endif  // PARKGAME_SIM_H_
