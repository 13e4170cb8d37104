#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "parkgame/strategies.h"

namespace parkgame {

namespace {

Decision proceed(NodeId next, VehicleAction route = {}) {
  Decision d;
  d.kind = Decision::Kind::kProceed;
  d.next_node = next;
  d.planned_action = std::move(route);
  return d;
}

Decision park(NodeId node) {
  Decision d;
  d.kind = Decision::Kind::kPark;
  d.park_node = node;
  return d;
}

// The only move available inside a horizontal lane.
NodeId forward(const PlanningState& s) {
  const auto opts = next_options(s.graph, s.current, s.came_from);
  if (opts.size() != 1) throw std::logic_error("expected a single forward move in a lane");
  return opts.front();
}

}  // namespace

PrudentStrategy::PrudentStrategy(const ParkingLotGraph& graph, Point door) : door_(door) {
  std::vector<double> row_distance(static_cast<std::size_t>(graph.lane_count()), kInfiniteCost);
  for (int lane = 0; lane < graph.lane_count(); ++lane) {
    for (NodeId n : graph.lane_nodes(lane)) {
      row_distance[static_cast<std::size_t>(lane)] =
          std::min(row_distance[static_cast<std::size_t>(lane)], terminal_cost(graph, n, door));
    }
  }
  row_order_.resize(row_distance.size());
  std::iota(row_order_.begin(), row_order_.end(), 0);
  std::stable_sort(row_order_.begin(), row_order_.end(), [&](int a, int b) {
    return row_distance[static_cast<std::size_t>(a)] <
           row_distance[static_cast<std::size_t>(b)] - kCostTolerance;
  });
  row_scanned_.assign(row_distance.size(), false);
}

bool PrudentStrategy::nearer(const ParkingLotGraph& g, NodeId a, NodeId b) const {
  return terminal_cost(g, a, door_) < terminal_cost(g, b, door_) - kCostTolerance;
}

Decision PrudentStrategy::decide(const PlanningState& s) {
  switch (mode_) {
    case Mode::kSearching: return searching(s);
    case Mode::kHoping: return hoping(s);
    case Mode::kReturning: return returning(s);
  }
  return Decision{};
}

Decision PrudentStrategy::route_to(const PlanningState& s, NodeId target, NodeId via) {
  auto route = shortest_route(s.graph, s.cost.edges, s.current, s.came_from, target, via);
  if (!route || route->size() < 2) return Decision{};
  const NodeId next = (*route)[1];
  return proceed(next, std::move(*route));
}

Decision PrudentStrategy::searching(const PlanningState& s) {
  const ParkingLotGraph& g = s.graph;
  const Node& here = g.node(s.current);
  auto target = std::find_if(row_order_.begin(), row_order_.end(), [&](int r) {
    return !row_scanned_[static_cast<std::size_t>(r)];
  });

  if (here.spot_bearing()) {
    const NodeId next = forward(s);
    if (target != row_order_.end() && here.lane == *target) {
      if (!g.spot_bearing(next)) row_scanned_[static_cast<std::size_t>(here.lane)] = true;
      if (s.knowledge.revealed_available(s.current)) {
        skipped_ = s.current;
        run_best_ = kNoNode;
        mode_ = Mode::kHoping;
      }
    }
    return proceed(next);
  }

  // At a connector or the entrance: head for the nearer end of the next row.
  for (; target != row_order_.end(); ++target) {
    if (row_scanned_[static_cast<std::size_t>(*target)]) continue;
    const int row = *target;
    std::optional<std::vector<NodeId>> best;
    double best_cost = kInfiniteCost;
    for (bool far : {false, true}) {
      const NodeId entry = g.spot_node(row, far ? g.nodes_per_lane() - 1 : 0);
      auto route = shortest_route(g, s.cost.edges, s.current, s.came_from, entry,
                                  g.connector(row, far));
      if (!route) continue;
      const double c = running_cost(g, *route, s.cost.edges);
      if (c < best_cost - kCostTolerance) {
        best_cost = c;
        best = std::move(route);
      }
    }
    if (best && best->size() >= 2) {
      const NodeId next = (*best)[1];
      return proceed(next, std::move(*best));
    }
    row_scanned_[static_cast<std::size_t>(row)] = true;
  }
  return Decision{};
}

Decision PrudentStrategy::hoping(const PlanningState& s) {
  const ParkingLotGraph& g = s.graph;
  if (!g.spot_bearing(s.current)) {
    // The row ended without a nearer spot.
    goal_ = run_best_ != kNoNode ? run_best_ : skipped_;
    take_any_ = run_best_ == kNoNode;
    mode_ = Mode::kReturning;
    return returning(s);
  }
  const NodeId next = forward(s);
  if (s.current != skipped_) {
    const bool free_here = s.knowledge.revealed_available(s.current);
    if (free_here && nearer(g, s.current, skipped_)) {
      if (g.spot_bearing(next) && nearer(g, next, s.current)) {
        run_best_ = s.current;
        return proceed(next);
      }
      return park(s.current);
    }
    if (run_best_ != kNoNode) {
      // The run of nearer spots broke; go back for its best one.
      goal_ = run_best_;
      take_any_ = false;
      mode_ = Mode::kReturning;
      return returning(s);
    }
  }
  if (!g.spot_bearing(next)) row_scanned_[static_cast<std::size_t>(g.node(s.current).lane)] = true;
  return proceed(next);
}

Decision PrudentStrategy::returning(const PlanningState& s) {
  if (s.knowledge.revealed_available(s.current) &&
      (take_any_ || s.current == goal_ || !nearer(s.graph, goal_, s.current))) {
    return park(s.current);
  }
  return route_to(s, goal_, kNoNode);
}

}  // namespace parkgame
