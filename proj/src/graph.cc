#include "parkgame/graph.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace parkgame {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

ParkingLotGraph::ParkingLotGraph(const LotLayout& layout) : layout_(layout) {
  if (layout.lane_count < 1) {
    throw std::invalid_argument("lot needs at least one lane, got " +
                                std::to_string(layout.lane_count));
  }
  if (layout.nodes_per_lane < 1) {
    throw std::invalid_argument("lot needs at least one node per lane, got " +
                                std::to_string(layout.nodes_per_lane));
  }
  if (!(layout.pitch > 0.0) || !std::isfinite(layout.pitch)) {
    throw std::invalid_argument("pitch must be positive and finite");
  }

  const int lanes = layout.lane_count;
  const int per_lane = layout.nodes_per_lane;
  const double p = layout.pitch;
  const bool mirrored = layout.entrance == EntranceSide::kRight;
  // Column 0 is the entrance-side connector, column per_lane+1 the far side.
  auto x_of = [&](int column) {
    const int c = mirrored ? per_lane + 1 - column : column;
    return c * p;
  };

  nodes_.reserve(static_cast<std::size_t>(lanes) * (per_lane + 2) + 1);
  for (int lane = 0; lane < lanes; ++lane) {
    for (int slot = 0; slot < per_lane; ++slot) {
      const auto id = static_cast<NodeId>(nodes_.size());
      nodes_.push_back({id, {x_of(slot + 1), lane * p}, NodeKind::kSpot, lane, slot});
    }
  }
  for (int lane = 0; lane < lanes; ++lane) {
    auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({id, {x_of(0), lane * p}, NodeKind::kConnector, lane, -1});
    id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({id, {x_of(per_lane + 1), lane * p}, NodeKind::kConnector, lane,
                      per_lane});
  }
  entrance_ = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({entrance_, {x_of(0), -p}, NodeKind::kEntrance, -1, -1});

  adjacency_.resize(nodes_.size());
  incident_edges_.resize(nodes_.size());

  for (int lane = 0; lane < lanes; ++lane) {
    add_edge(connector(lane, false), spot_node(lane, 0), true);
    for (int slot = 0; slot + 1 < per_lane; ++slot) {
      add_edge(spot_node(lane, slot), spot_node(lane, slot + 1), true);
    }
    add_edge(spot_node(lane, per_lane - 1), connector(lane, true), true);
  }
  for (int lane = 0; lane + 1 < lanes; ++lane) {
    add_edge(connector(lane, false), connector(lane + 1, false), false);
    add_edge(connector(lane, true), connector(lane + 1, true), false);
  }
  add_edge(entrance_, connector(0, false), false);

  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

void ParkingLotGraph::add_edge(NodeId a, NodeId b, bool horizontal) {
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({std::min(a, b), std::max(a, b), horizontal});
  adjacency_[static_cast<std::size_t>(a)].push_back(b);
  adjacency_[static_cast<std::size_t>(b)].push_back(a);
  incident_edges_[static_cast<std::size_t>(a)].push_back(id);
  incident_edges_[static_cast<std::size_t>(b)].push_back(id);
}

int ParkingLotGraph::edge_id(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b)) return -1;
  for (int e : incident_edges_[static_cast<std::size_t>(a)]) {
    const Edge& edge = edges_[static_cast<std::size_t>(e)];
    if (edge.a == std::min(a, b) && edge.b == std::max(a, b)) return e;
  }
  return -1;
}

double ParkingLotGraph::edge_length(NodeId a, NodeId b) const {
  if (!adjacent(a, b)) {
    throw std::invalid_argument("nodes " + std::to_string(a) + " and " +
                                std::to_string(b) + " are not adjacent");
  }
  return distance(node(a).position, node(b).position);
}

NodeId ParkingLotGraph::spot_node(int lane, int slot) const {
  if (lane < 0 || lane >= lane_count() || slot < 0 || slot >= nodes_per_lane()) {
    throw std::out_of_range("no spot node at lane " + std::to_string(lane) +
                            ", slot " + std::to_string(slot));
  }
  return static_cast<NodeId>(lane * nodes_per_lane() + slot);
}

NodeId ParkingLotGraph::connector(int lane, bool far_side) const {
  if (lane < 0 || lane >= lane_count()) {
    throw std::out_of_range("no lane " + std::to_string(lane));
  }
  return static_cast<NodeId>(spot_node_count() + 2 * static_cast<std::size_t>(lane) +
                             (far_side ? 1 : 0));
}

std::vector<NodeId> ParkingLotGraph::lane_nodes(int lane) const {
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(nodes_per_lane()));
  for (int slot = 0; slot < nodes_per_lane(); ++slot) out.push_back(spot_node(lane, slot));
  return out;
}

ParkingLotGraph build_lot(const LotLayout& layout) { return ParkingLotGraph(layout); }

std::vector<NodeId> next_options(const ParkingLotGraph& graph, NodeId current,
                                 NodeId came_from) {
  if (!graph.contains(current)) {
    throw std::out_of_range("unknown node " + std::to_string(current));
  }
  if (came_from != kNoNode && !graph.adjacent(current, came_from)) {
    throw std::invalid_argument("heading inconsistent: node " + std::to_string(came_from) +
                                " is not adjacent to " + std::to_string(current));
  }
  std::vector<NodeId> out;
  for (NodeId n : graph.neighbors(current)) {
    if (n == came_from || n == graph.entrance()) continue;
    out.push_back(n);
  }
  return out;
}

}  // namespace parkgame
