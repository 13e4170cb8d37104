#include "parkgame/cost.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace parkgame {

void validate(const CostWeights& weights) {
  if (!(weights.omega_r > 0.0) || !std::isfinite(weights.omega_r) ||
      !(weights.omega_t > 0.0) || !std::isfinite(weights.omega_t)) {
    throw std::invalid_argument("cost weights must be positive and finite");
  }
}

double edge_cost(const ParkingLotGraph& graph, EdgeCostMode mode, NodeId a, NodeId b) {
  const double length = graph.edge_length(a, b);  // throws when not adjacent
  return mode == EdgeCostMode::kUnit ? 1.0 : length;
}

double running_cost(const ParkingLotGraph& graph, std::span<const NodeId> route,
                    EdgeCostMode mode) {
  double sum = 0.0;
  for (std::size_t i = 1; i < route.size(); ++i) {
    sum += edge_cost(graph, mode, route[i - 1], route[i]);
  }
  return sum;
}

double terminal_cost(const ParkingLotGraph& graph, NodeId node, Point door) {
  return distance(graph.node(node).position, door);
}

double total_cost(const ParkingLotGraph& graph, std::span<const NodeId> route,
                  const CostModel& model) {
  if (route.empty()) throw std::invalid_argument("empty route");
  return model.weights.omega_r * running_cost(graph, route, model.edges) +
         model.weights.omega_t * terminal_cost(graph, route.back(), model.door);
}

ResponseTable::ResponseTable(const ParkingLotGraph& graph, const Knowledge& knowledge,
                             std::span<const NodeId> traversal,
                             std::span<const NodeId> lot_nodes, const CostModel& model) {
  std::map<NodeId, std::ptrdiff_t> bit_of;
  for (std::size_t i = 0; i < lot_nodes.size(); ++i) {
    bit_of[lot_nodes[i]] = static_cast<std::ptrdiff_t>(i);
  }
  std::vector<bool> seen(graph.node_count(), false);
  double prefix = 0.0;
  for (std::size_t pos = 0; pos < traversal.size(); ++pos) {
    const NodeId n = traversal[pos];
    if (pos > 0) prefix += edge_cost(graph, model.edges, traversal[pos - 1], n);
    if (seen[static_cast<std::size_t>(n)]) continue;
    seen[static_cast<std::size_t>(n)] = true;
    if (!graph.spot_bearing(n)) continue;
    std::ptrdiff_t bit = -1;
    if (knowledge.visited(n)) {
      if (!knowledge.revealed_available(n)) continue;
    } else {
      auto it = bit_of.find(n);
      if (it == bit_of.end()) {
        throw std::invalid_argument("arrangement does not cover unvisited node " +
                                    std::to_string(n));
      }
      bit = it->second;
    }
    const double cost = model.weights.omega_r * prefix +
                        model.weights.omega_t * terminal_cost(graph, n, model.door);
    sorted_.push_back({cost, pos, n, bit});
  }
  std::stable_sort(sorted_.begin(), sorted_.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.cost, a.position) < std::tie(b.cost, b.position);
  });
}

BestResponse ResponseTable::evaluate(std::span<const std::uint64_t> row) const {
  auto avail = [&](const Candidate& c) {
    if (c.bit < 0) return true;
    const auto b = static_cast<std::size_t>(c.bit);
    return ((row[b / 64] >> (b % 64)) & 1u) != 0;
  };
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    if (!avail(sorted_[i])) continue;
    const double limit = sorted_[i].cost + kCostTolerance;
    const Candidate* best = &sorted_[i];
    for (std::size_t j = i + 1; j < sorted_.size() && sorted_[j].cost <= limit; ++j) {
      if (avail(sorted_[j]) && sorted_[j].position < best->position) best = &sorted_[j];
    }
    return {best->cost, best->node, best->position};
  }
  return {};
}

BestResponse best_response_cost(const ParkingLotGraph& graph, const Knowledge& knowledge,
                                std::span<const NodeId> traversal,
                                const LotAction& arrangement, const CostModel& model) {
  if (arrangement.nodes.size() != arrangement.states.size()) {
    throw std::invalid_argument("arrangement nodes and states differ in length");
  }
  for (NodeId n : arrangement.nodes) {
    if (knowledge.visited(n)) {
      throw std::invalid_argument("arrangement assigns visited node " + std::to_string(n));
    }
  }
  for (std::size_t i = 1; i < traversal.size(); ++i) {
    if (!graph.adjacent(traversal[i - 1], traversal[i])) {
      throw std::invalid_argument("traversal is not a walk");
    }
  }
  const ResponseTable table(graph, knowledge, traversal, arrangement.nodes, model);
  std::vector<std::uint64_t> row((arrangement.nodes.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < arrangement.states.size(); ++i) {
    if (arrangement.states[i]) row[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return table.evaluate(row);
}

std::optional<std::vector<NodeId>> shortest_route(const ParkingLotGraph& graph,
                                                  EdgeCostMode mode, NodeId from,
                                                  NodeId came_from, NodeId to, NodeId via) {
  if (!graph.contains(from) || !graph.contains(to)) {
    throw std::out_of_range("route endpoint outside the lot");
  }
  using State = std::pair<NodeId, NodeId>;  // (node, arrived from)
  auto is_goal = [&](const State& s) {
    return s.first == to && (via == kNoNode || s.second == via);
  };
  std::map<State, double> dist;
  std::map<State, State> parent;
  using Entry = std::tuple<double, NodeId, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  const State start{from, came_from};
  dist[start] = 0.0;
  queue.emplace(0.0, from, came_from);
  while (!queue.empty()) {
    const auto [d, node, prev] = queue.top();
    queue.pop();
    const State s{node, prev};
    if (d > dist[s]) continue;
    if (is_goal(s)) {
      std::vector<NodeId> route;
      State cur = s;
      route.push_back(cur.first);
      while (cur != start) {
        cur = parent.at(cur);
        route.push_back(cur.first);
      }
      std::reverse(route.begin(), route.end());
      return route;
    }
    for (NodeId w : next_options(graph, node, prev)) {
      const State t{w, node};
      const double nd = d + edge_cost(graph, mode, node, w);
      auto it = dist.find(t);
      if (it == dist.end() || nd < it->second) {
        dist[t] = nd;
        parent[t] = s;
        queue.emplace(nd, w, node);
      }
    }
  }
  return std::nullopt;
}

}  // namespace parkgame
