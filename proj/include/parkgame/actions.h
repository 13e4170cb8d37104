#ifndef PARKGAME_ACTIONS_H_
#define PARKGAME_ACTIONS_H_

#include <cstdint>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "parkgame/graph.h"

namespace parkgame {

// Arrangements above this size are not materialized; sample instead.
inline constexpr double kMaxExactLotActions = 2.5e7;

// Possible counts of unvisited nodes with x = 1 given n_a available and n_u
// occupied unvisited spots: ceil(n_a/2) .. min(n_a, (n_a+n_u)/2). Throws
// std::invalid_argument for negative counts or an odd total.
std::vector<int> feasible_x1_counts(int n_available, int n_occupied);

// All distinct arrangements of `ones` ones and `zeros` zeros, in descending
// lexicographic order (the all-ones-first vector comes first).
std::vector<std::vector<std::uint8_t>> permutation(int ones, int zeros);

double binomial(int n, int k);
// |A_p| = sum over m in S of C(N, m), N = (n_a + n_u) / 2.
double lot_action_count(int n_available, int n_occupied);

// One lot action bound to explicit nodes.
struct LotAction {
  std::vector<NodeId> nodes;
  std::vector<std::uint8_t> states;
};

// A set of arrangements over a fixed node list, packed as bit rows. Position
// i of every arrangement refers to nodes()[i].
class LotActionSet {
 public:
  LotActionSet() = default;
  explicit LotActionSet(std::vector<NodeId> nodes);

  std::span<const NodeId> nodes() const { return nodes_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::size_t words_per_action() const { return words_; }

  bool available(std::size_t action, std::size_t position) const {
    return (data_[action * words_ + position / 64] >> (position % 64)) & 1u;
  }
  std::span<const std::uint64_t> row(std::size_t action) const {
    return {data_.data() + action * words_, words_};
  }
  int ones(std::size_t action) const;
  LotAction at(std::size_t action) const;

  void push_back(std::span<const std::uint8_t> states);
  void push_back_row(std::span<const std::uint64_t> row);
  void reserve(std::size_t n) { data_.reserve(n * words_); }

 private:
  std::vector<NodeId> nodes_;
  std::size_t words_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> data_;
};

// The union over m in `counts` of all arrangements of m ones and N - m zeros,
// bound positionally to `unvisited_nodes` (N of them). Blocks come in the
// order of `counts`, each in permutation() order. Throws
// std::invalid_argument when N does not match the counts and std::length_error
// when the set would exceed kMaxExactLotActions.
LotActionSet parking_lot_actions(std::span<const int> counts, int n_available,
                                 int n_occupied, std::vector<NodeId> unvisited_nodes);

using VehicleAction = std::vector<NodeId>;

// All admissible traversals from `current`: forward-only in horizontal lanes,
// every lane not in `lanes_done` entered exactly once, lanes in `lanes_done`
// never entered, no edge used twice. A traversal ends at the last spot node it
// covers; when nothing is left to cover the only traversal is {current}.
// When `current` is a spot node its lane counts as entered and `came_from`
// must give the travel direction.
std::vector<VehicleAction> vehicle_traversals(const ParkingLotGraph& graph, NodeId current,
                                              const std::vector<bool>& lanes_done,
                                              NodeId came_from);

// Memoized vehicle_traversals keyed on (current, came_from, lanes_done). Not
// thread-safe; use one per worker.
class TraversalCache {
 public:
  explicit TraversalCache(const ParkingLotGraph& graph) : graph_(&graph) {}

  const std::vector<VehicleAction>& get(NodeId current, const std::vector<bool>& lanes_done,
                                        NodeId came_from);
  std::size_t hits() const { return hits_; }

 private:
  const ParkingLotGraph* graph_;
  std::map<std::tuple<NodeId, NodeId, std::vector<bool>>, std::vector<VehicleAction>> cache_;
  std::size_t hits_ = 0;
};

struct DirectionGroup {
  NodeId next = kNoNode;
  std::vector<std::size_t> members;  // indices into the action list
};

// Partitions actions by their second node, groups ordered by node id.
// Throws std::invalid_argument for an empty set, mixed start nodes or an
// action with no second node.
std::vector<DirectionGroup> group_by_direction(std::span<const VehicleAction> actions);

}  // namespace parkgame

#endif  // PARKGAME_ACTIONS_H_
