#include "parkgame/actions.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>
#include <string>

namespace parkgame {

std::vector<int> feasible_x1_counts(int n_available, int n_occupied) {
  if (n_available < 0 || n_occupied < 0) {
    throw std::invalid_argument("spot counts must be non-negative");
  }
  if ((n_available + n_occupied) % 2 != 0) {
    throw std::invalid_argument("available + occupied = " +
                                std::to_string(n_available + n_occupied) +
                                " is odd; spots come in flanking pairs");
  }
  const int nodes = (n_available + n_occupied) / 2;
  const int lo = (n_available + 1) / 2;
  const int hi = std::min(n_available, nodes);
  std::vector<int> out;
  for (int m = lo; m <= hi; ++m) out.push_back(m);
  return out;
}

namespace {

// Calls fn(states) for each arrangement of `ones` ones among `n` positions,
// descending lexicographic order.
template <typename Fn>
void for_each_arrangement(int ones, int n, Fn&& fn) {
  std::vector<std::uint8_t> v(static_cast<std::size_t>(n), 0);
  std::fill(v.begin(), v.begin() + ones, 1);
  do {
    fn(std::span<const std::uint8_t>(v));
  } while (std::prev_permutation(v.begin(), v.end()));
}

}  // namespace

std::vector<std::vector<std::uint8_t>> permutation(int ones, int zeros) {
  if (ones < 0 || zeros < 0) throw std::invalid_argument("negative permutation counts");
  std::vector<std::vector<std::uint8_t>> out;
  for_each_arrangement(ones, ones + zeros, [&](std::span<const std::uint8_t> v) {
    out.emplace_back(v.begin(), v.end());
  });
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double lot_action_count(int n_available, int n_occupied) {
  const int nodes = (n_available + n_occupied) / 2;
  double total = 0.0;
  for (int m : feasible_x1_counts(n_available, n_occupied)) total += binomial(nodes, m);
  return total;
}

LotActionSet::LotActionSet(std::vector<NodeId> nodes)
    : nodes_(std::move(nodes)), words_((nodes_.size() + 63) / 64) {}

int LotActionSet::ones(std::size_t action) const {
  int n = 0;
  for (std::uint64_t w : row(action)) n += std::popcount(w);
  return n;
}

LotAction LotActionSet::at(std::size_t action) const {
  if (action >= count_) throw std::out_of_range("lot action index out of range");
  LotAction out{nodes_, std::vector<std::uint8_t>(nodes_.size(), 0)};
  for (std::size_t i = 0; i < nodes_.size(); ++i) out.states[i] = available(action, i) ? 1 : 0;
  return out;
}

void LotActionSet::push_back(std::span<const std::uint8_t> states) {
  if (states.size() != nodes_.size()) {
    throw std::invalid_argument("arrangement length " + std::to_string(states.size()) +
                                " does not match " + std::to_string(nodes_.size()) + " nodes");
  }
  const std::size_t base = data_.size();
  data_.resize(base + words_, 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i]) data_[base + i / 64] |= std::uint64_t{1} << (i % 64);
  }
  ++count_;
}

void LotActionSet::push_back_row(std::span<const std::uint64_t> row) {
  if (row.size() != words_) throw std::invalid_argument("row width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++count_;
}

LotActionSet parking_lot_actions(std::span<const int> counts, int n_available,
                                 int n_occupied, std::vector<NodeId> unvisited_nodes) {
  // Validates the pairing arithmetic as a side effect.
  const auto feasible = feasible_x1_counts(n_available, n_occupied);
  const int nodes = (n_available + n_occupied) / 2;
  if (static_cast<int>(unvisited_nodes.size()) != nodes) {
    throw std::invalid_argument("counts describe " + std::to_string(nodes) +
                                " unvisited spot nodes but " +
                                std::to_string(unvisited_nodes.size()) + " were given");
  }
  double total = 0.0;
  for (int m : counts) {
    if (std::find(feasible.begin(), feasible.end(), m) == feasible.end()) {
      throw std::invalid_argument("x=1 count " + std::to_string(m) +
                                  " is infeasible for the given spot counts");
    }
    total += binomial(nodes, m);
  }
  if (total > kMaxExactLotActions) {
    throw std::length_error("lot action space has " + std::to_string(total) +
                            " arrangements; use sampling");
  }
  LotActionSet out(std::move(unvisited_nodes));
  out.reserve(static_cast<std::size_t>(total));
  for (int m : counts) {
    for_each_arrangement(m, nodes, [&](std::span<const std::uint8_t> v) { out.push_back(v); });
  }
  return out;
}

namespace {

struct Partial {
  VehicleAction path;
  std::vector<bool> used_edges;
  std::vector<bool> remaining;
  int remaining_count = 0;
};

// True when the walk may stop at `u`: nothing left to enter and, inside a
// lane, `u` is its last node in the travel direction.
bool finished(const ParkingLotGraph& g, NodeId u, NodeId prev, int remaining_count) {
  if (remaining_count > 0) return false;
  if (!g.spot_bearing(u)) return true;
  for (NodeId n : g.neighbors(u)) {
    if (n != prev && g.spot_bearing(n)) return false;
  }
  return true;
}

}  // namespace

std::vector<VehicleAction> vehicle_traversals(const ParkingLotGraph& graph, NodeId current,
                                              const std::vector<bool>& lanes_done,
                                              NodeId came_from) {
  if (!graph.contains(current)) {
    throw std::out_of_range("unknown node " + std::to_string(current));
  }
  if (lanes_done.size() != static_cast<std::size_t>(graph.lane_count())) {
    throw std::invalid_argument("lane state has " + std::to_string(lanes_done.size()) +
                                " entries for " + std::to_string(graph.lane_count()) +
                                " lanes");
  }
  if (came_from != kNoNode && !graph.adjacent(current, came_from)) {
    throw std::invalid_argument("heading node is not adjacent to the current node");
  }
  if (graph.spot_bearing(current) && came_from == kNoNode) {
    throw std::invalid_argument("a heading is required inside a horizontal lane");
  }

  Partial start;
  start.path = {current};
  start.used_edges.assign(graph.edges().size(), false);
  start.remaining.assign(lanes_done.size(), false);
  for (std::size_t i = 0; i < lanes_done.size(); ++i) {
    const bool in_lane = graph.spot_bearing(current) &&
                         graph.node(current).lane == static_cast<int>(i);
    start.remaining[i] = !lanes_done[i] && !in_lane;
    start.remaining_count += start.remaining[i] ? 1 : 0;
  }

  // Breadth-first over partial walks; each frontier entry carries the edges it
  // has used and the horizontal lanes it still has to enter.
  std::vector<VehicleAction> out;
  std::deque<Partial> frontier;
  frontier.push_back(std::move(start));
  while (!frontier.empty()) {
    Partial p = std::move(frontier.front());
    frontier.pop_front();
    const NodeId u = p.path.back();
    const NodeId prev = p.path.size() > 1 ? p.path[p.path.size() - 2] : came_from;
    if (finished(graph, u, prev, p.remaining_count)) {
      out.push_back(std::move(p.path));
      continue;
    }
    for (NodeId w : graph.neighbors(u)) {
      if (w == prev || w == graph.entrance()) continue;
      const int e = graph.edge_id(u, w);
      if (p.used_edges[static_cast<std::size_t>(e)]) continue;
      const bool enters_lane = graph.spot_bearing(w) && !graph.spot_bearing(u);
      const auto lane = static_cast<std::size_t>(graph.node(w).lane);
      if (enters_lane && !p.remaining[lane]) continue;
      Partial next = p;
      next.path.push_back(w);
      next.used_edges[static_cast<std::size_t>(e)] = true;
      if (enters_lane) {
        next.remaining[lane] = false;
        --next.remaining_count;
      }
      frontier.push_back(std::move(next));
    }
  }
  return out;
}

const std::vector<VehicleAction>& TraversalCache::get(NodeId current,
                                                      const std::vector<bool>& lanes_done,
                                                      NodeId came_from) {
  auto key = std::make_tuple(current, came_from, lanes_done);
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    ++hits_;
    return it->second;
  }
  auto actions = vehicle_traversals(*graph_, current, lanes_done, came_from);
  return cache_.emplace(std::move(key), std::move(actions)).first->second;
}

std::vector<DirectionGroup> group_by_direction(std::span<const VehicleAction> actions) {
  if (actions.empty()) throw std::invalid_argument("cannot group an empty action set");
  const NodeId start = actions.front().empty() ? kNoNode : actions.front().front();
  std::vector<DirectionGroup> groups;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto& a = actions[i];
    if (a.empty() || a.front() != start) {
      throw std::invalid_argument("actions do not share a start node");
    }
    if (a.size() < 2) throw std::invalid_argument("action has no second node");
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const DirectionGroup& g) { return g.next == a[1]; });
    if (it == groups.end()) {
      groups.push_back({a[1], {i}});
    } else {
      it->members.push_back(i);
    }
  }
  std::sort(groups.begin(), groups.end(),
            [](const DirectionGroup& x, const DirectionGroup& y) { return x.next < y.next; });
  return groups;
}

}  // namespace parkgame
