#ifndef PARKGAME_GRAPH_H_
#define PARKGAME_GRAPH_H_

#include <cstdint>
#include <span>
#include <vector>

namespace parkgame {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

double distance(Point a, Point b);

enum class EntranceSide { kLeft, kRight };

// Description of a rectangular lot: `lane_count` horizontal lanes stacked
// away from the entrance, each flanked by spots on both sides, joined at both
// ends by vertical connector lanes.
struct LotLayout {
  int lane_count = 1;
  int nodes_per_lane = 1;
  EntranceSide entrance = EntranceSide::kLeft;
  Point door;
  double pitch = 1.0;

  bool operator==(const LotLayout&) const = default;
};

enum class NodeKind { kSpot, kConnector, kEntrance };

struct Node {
  NodeId id = kNoNode;
  Point position;
  NodeKind kind = NodeKind::kSpot;
  // Horizontal lane the node belongs to (for connectors: the lane whose end
  // it joins). -1 for the entrance.
  int lane = -1;
  // Spot nodes: 0..N-1 counted from the entrance side. Connectors: -1 on the
  // entrance side, N on the far side.
  int slot = 0;

  bool spot_bearing() const { return kind == NodeKind::kSpot; }
};

struct Edge {
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  bool horizontal = false;
};

// Immutable lot graph. Node ids: spot nodes first in row-major order starting
// at the lane nearest the entrance (slot 0 at the entrance side), then for
// each lane its entrance-side and far-side connectors, then the entrance.
class ParkingLotGraph {
 public:
  explicit ParkingLotGraph(const LotLayout& layout);

  const LotLayout& layout() const { return layout_; }
  int lane_count() const { return layout_.lane_count; }
  int nodes_per_lane() const { return layout_.nodes_per_lane; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t spot_node_count() const {
    return static_cast<std::size_t>(lane_count()) * nodes_per_lane();
  }
  std::size_t spot_count() const { return 2 * spot_node_count(); }

  const Node& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::span<const Node> nodes() const { return nodes_; }
  bool contains(NodeId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < nodes_.size();
  }
  bool spot_bearing(NodeId id) const { return node(id).spot_bearing(); }

  std::span<const NodeId> neighbors(NodeId id) const {
    return adjacency_.at(static_cast<std::size_t>(id));
  }
  bool adjacent(NodeId a, NodeId b) const { return edge_id(a, b) >= 0; }
  // Index into edges(), or -1 when a and b are not adjacent.
  int edge_id(NodeId a, NodeId b) const;
  std::span<const Edge> edges() const { return edges_; }
  double edge_length(NodeId a, NodeId b) const;

  NodeId entrance() const { return entrance_; }
  NodeId spot_node(int lane, int slot) const;
  NodeId connector(int lane, bool far_side) const;
  // Spot nodes of one lane ordered by slot.
  std::vector<NodeId> lane_nodes(int lane) const;

 private:
  void add_edge(NodeId a, NodeId b, bool horizontal);

  LotLayout layout_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::vector<int>> incident_edges_;
  NodeId entrance_ = kNoNode;
};

// Throws std::invalid_argument for zero lanes, zero nodes per lane or a
// non-positive pitch.
ParkingLotGraph build_lot(const LotLayout& layout);

// Nodes the vehicle may move to next from `current` having arrived from
// `came_from` (kNoNode before the first move). Immediate reversals and moves
// back into the entrance are excluded, so inside a horizontal lane the only
// option is the forward neighbor.
std::vector<NodeId> next_options(const ParkingLotGraph& graph, NodeId current,
                                 NodeId came_from);

}  // namespace parkgame

#endif  // PARKGAME_GRAPH_H_
