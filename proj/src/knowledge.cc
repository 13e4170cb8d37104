#include "parkgame/knowledge.h"

#include <stdexcept>
#include <string>

namespace parkgame {

Knowledge init_knowledge(const ParkingLotGraph& graph, int total_available,
                         int total_occupied) {
  const int capacity = static_cast<int>(graph.spot_count());
  if (total_available < 0 || total_occupied < 0 ||
      total_available + total_occupied != capacity) {
    throw std::invalid_argument(
        "available (" + std::to_string(total_available) + ") + occupied (" +
        std::to_string(total_occupied) + ") must equal lot capacity " +
        std::to_string(capacity));
  }
  Knowledge k;
  k.visited_.assign(graph.node_count(), false);
  k.revealed_.assign(graph.node_count(), -1);
  k.lane_entered_.assign(static_cast<std::size_t>(graph.lane_count()), false);
  k.n_available_ = total_available;
  k.n_occupied_ = total_occupied;
  k.total_spots_ = capacity;
  k.spot_nodes_ = static_cast<int>(graph.spot_node_count());
  k.visited_[static_cast<std::size_t>(graph.entrance())] = true;
  k.visited_count_ = 1;
  return k;
}

bool Knowledge::visited(NodeId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < visited_.size() &&
         visited_[static_cast<std::size_t>(id)];
}

std::optional<NodeState> Knowledge::revealed(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= revealed_.size()) return std::nullopt;
  const auto v = revealed_[static_cast<std::size_t>(id)];
  if (v < 0) return std::nullopt;
  return static_cast<NodeState>(v);
}

std::vector<NodeId> Knowledge::unvisited_spot_nodes(const ParkingLotGraph& graph) const {
  std::vector<NodeId> out;
  out.reserve(graph.spot_node_count());
  for (std::size_t i = 0; i < graph.spot_node_count(); ++i) {
    if (!visited_[i]) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

Knowledge Knowledge::observe(const ParkingLotGraph& graph,
                             const SpotObservation& obs) const {
  if (!graph.contains(obs.node) || !graph.spot_bearing(obs.node)) {
    throw std::invalid_argument("observation at node " + std::to_string(obs.node) +
                                " which is not spot-bearing");
  }
  if (visited(obs.node)) {
    throw std::invalid_argument("node " + std::to_string(obs.node) +
                                " has already been observed");
  }
  const int avail = obs.available_spots();
  const int occ = 2 - avail;
  if (avail > n_available_ || occ > n_occupied_) {
    throw std::invalid_argument("observation at node " + std::to_string(obs.node) +
                                " contradicts the remaining spot counts");
  }
  Knowledge next = *this;
  const auto idx = static_cast<std::size_t>(obs.node);
  next.visited_[idx] = true;
  next.revealed_[idx] = static_cast<std::int8_t>(obs.state());
  next.lane_entered_[static_cast<std::size_t>(graph.node(obs.node).lane)] = true;
  next.n_available_ -= avail;
  next.n_occupied_ -= occ;
  next.revealed_nodes_ += 1;
  next.visited_count_ += 1;
  return next;
}

Knowledge Knowledge::arrive(const ParkingLotGraph& graph, NodeId id) const {
  if (!graph.contains(id)) throw std::out_of_range("unknown node " + std::to_string(id));
  if (graph.spot_bearing(id) && !visited(id)) {
    throw std::invalid_argument("first arrival at spot node " + std::to_string(id) +
                                " needs an observation");
  }
  if (visited(id)) return *this;
  Knowledge next = *this;
  next.visited_[static_cast<std::size_t>(id)] = true;
  next.visited_count_ += 1;
  return next;
}

Knowledge Knowledge::advance_cycle() const {
  Knowledge next = *this;
  next.cycle_ += 1;
  return next;
}

bool Knowledge::conserved() const {
  if (n_available_ < 0 || n_occupied_ < 0) return false;
  if (n_available_ + n_occupied_ + revealed_spot_count() != total_spots_) return false;
  return n_available_ + n_occupied_ == 2 * (spot_nodes_ - revealed_nodes_);
}

}  // namespace parkgame
