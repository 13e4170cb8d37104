#ifndef PARKGAME_KNOWLEDGE_H_
#define PARKGAME_KNOWLEDGE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "parkgame/graph.h"

namespace parkgame {

// Node-level availability: available iff at least one flanking spot is free.
enum class NodeState : std::uint8_t { kOccupied = 0, kAvailable = 1 };

struct SpotObservation {
  NodeId node = kNoNode;
  bool left_available = false;
  bool right_available = false;

  NodeState state() const {
    return (left_available || right_available) ? NodeState::kAvailable
                                               : NodeState::kOccupied;
  }
  int available_spots() const { return int{left_available} + int{right_available}; }
};

// What the ego vehicle knows at cycle k: which nodes it has visited, the
// states revealed at visited spot nodes, and how many available/occupied
// spots remain among the unvisited spot nodes. Updates return new values.
class Knowledge {
 public:
  Knowledge() = default;

  bool visited(NodeId id) const;
  std::optional<NodeState> revealed(NodeId id) const;
  bool revealed_available(NodeId id) const {
    return revealed(id) == NodeState::kAvailable;
  }
  bool lane_entered(int lane) const { return lane_entered_.at(static_cast<std::size_t>(lane)); }
  const std::vector<bool>& lanes_entered() const { return lane_entered_; }

  int n_available() const { return n_available_; }
  int n_occupied() const { return n_occupied_; }
  int total_spots() const { return total_spots_; }
  // Spots at visited spot nodes; always 2 per revealed node.
  int revealed_spot_count() const { return 2 * revealed_nodes_; }
  int cycle() const { return cycle_; }
  std::size_t visited_count() const { return visited_count_; }

  // Unvisited spot nodes in ascending id order.
  std::vector<NodeId> unvisited_spot_nodes(const ParkingLotGraph& graph) const;

  // First arrival at a spot node. Throws std::invalid_argument when the node
  // was already observed, is not spot-bearing, or the counts would go negative.
  Knowledge observe(const ParkingLotGraph& graph, const SpotObservation& obs) const;
  // Arrival at a node that reveals nothing (connector, entrance or a revisit).
  Knowledge arrive(const ParkingLotGraph& graph, NodeId id) const;
  Knowledge advance_cycle() const;

  // n_a + n_u + revealed spots == total spots, and n_a + n_u equals twice the
  // number of unvisited spot nodes.
  bool conserved() const;

  bool operator==(const Knowledge&) const = default;

 private:
  friend Knowledge init_knowledge(const ParkingLotGraph&, int, int);

  std::vector<bool> visited_;
  std::vector<std::int8_t> revealed_;  // -1 unknown, else NodeState
  std::vector<bool> lane_entered_;
  int n_available_ = 0;
  int n_occupied_ = 0;
  int total_spots_ = 0;
  int spot_nodes_ = 0;
  int revealed_nodes_ = 0;
  std::size_t visited_count_ = 0;
  int cycle_ = 0;
};

// Knowledge at k = 0: the entrance is visited, nothing revealed. Throws
// std::invalid_argument when the totals do not add up to the lot capacity.
Knowledge init_knowledge(const ParkingLotGraph& graph, int total_available,
                         int total_occupied);

}  // namespace parkgame

#endif  // PARKGAME_KNOWLEDGE_H_
