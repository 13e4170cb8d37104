#include "parkgame/strategies.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace parkgame {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kSecure: return "secure";
    case StrategyKind::kGuarded: return "guarded";
    case StrategyKind::kPrudent: return "prudent";
  }
  return "?";
}

StrategyKind parse_strategy_kind(std::string_view name) {
  if (name == "secure") return StrategyKind::kSecure;
  if (name == "guarded") return StrategyKind::kGuarded;
  if (name == "prudent") return StrategyKind::kPrudent;
  throw std::invalid_argument("unknown strategy '" + std::string(name) +
                              "' (expected secure, guarded or prudent)");
}

std::string_view to_string(Decision::Kind kind) {
  switch (kind) {
    case Decision::Kind::kPark: return "park";
    case Decision::Kind::kProceed: return "proceed";
    case Decision::Kind::kNoSpot: return "no_spot";
  }
  return "?";
}

namespace {

std::vector<ResponseTable> response_tables(const ParkingLotGraph& graph,
                                           const Knowledge& knowledge,
                                           std::span<const VehicleAction> traversals,
                                           const LotActionSet& arrangements,
                                           const CostModel& model) {
  std::vector<ResponseTable> tables;
  tables.reserve(traversals.size());
  for (const auto& a : traversals) {
    tables.emplace_back(graph, knowledge, a, arrangements.nodes(), model);
  }
  return tables;
}

// First index whose value is within tolerance of the extreme.
template <typename Fn>
std::size_t first_near(std::size_t n, double target, Fn&& value_at, bool maximum) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = value_at(i);
    if (v == target) return i;
    if (maximum ? v >= target - kCostTolerance : v <= target + kCostTolerance) return i;
  }
  return 0;
}

Decision park_here(NodeId node, double value) {
  Decision d;
  d.kind = Decision::Kind::kPark;
  d.park_node = node;
  d.value = value;
  return d;
}

Decision no_spot() { return Decision{}; }

// Terminal state: nothing left to cover. Park if the current node is known
// available, otherwise the search has failed.
Decision finish(const PlanningState& s) {
  if (s.knowledge.revealed_available(s.current)) {
    return park_here(s.current,
                     s.cost.weights.omega_t * terminal_cost(s.graph, s.current, s.cost.door));
  }
  return no_spot();
}

bool terminal(const std::vector<VehicleAction>& all) {
  return all.empty() || (all.size() == 1 && all.front().size() == 1);
}

}  // namespace

MinimaxResult secure_value(const ParkingLotGraph& graph, const Knowledge& knowledge,
                           std::span<const VehicleAction> traversals,
                           const LotActionSet& arrangements, const CostModel& model) {
  if (traversals.empty() || arrangements.empty()) {
    throw std::invalid_argument("secure_value needs non-empty action sets");
  }
  const auto tables = response_tables(graph, knowledge, traversals, arrangements, model);
  std::vector<double> worst(traversals.size(), -kInfiniteCost);
  for (std::size_t v = 0; v < tables.size(); ++v) {
    double w = -kInfiniteCost;
    for (std::size_t p = 0; p < arrangements.size(); ++p) {
      w = std::max(w, tables[v].value(arrangements, p));
    }
    worst[v] = w;
  }
  MinimaxResult r;
  r.value = *std::min_element(worst.begin(), worst.end());
  r.action = first_near(worst.size(), r.value, [&](std::size_t i) { return worst[i]; }, false);
  r.worst_arrangement = first_near(
      arrangements.size(), worst[r.action],
      [&](std::size_t p) { return tables[r.action].value(arrangements, p); }, true);
  return r;
}

std::vector<DirectionValue> guarded_value(const ParkingLotGraph& graph,
                                          const Knowledge& knowledge,
                                          std::span<const VehicleAction> traversals,
                                          std::span<const DirectionGroup> groups,
                                          const LotActionSet& arrangements,
                                          const CostModel& model) {
  if (groups.empty() || arrangements.empty()) {
    throw std::invalid_argument("guarded_value needs non-empty action sets");
  }
  const auto tables = response_tables(graph, knowledge, traversals, arrangements, model);
  auto group_best = [&](const DirectionGroup& g, std::size_t p) {
    double best = kInfiniteCost;
    for (std::size_t i : g.members) best = std::min(best, tables.at(i).value(arrangements, p));
    return best;
  };
  std::vector<DirectionValue> out;
  for (const auto& g : groups) {
    if (g.members.empty()) throw std::invalid_argument("empty direction group");
    out.push_back({g.next, -kInfiniteCost, 0});
  }
  for (std::size_t p = 0; p < arrangements.size(); ++p) {
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      out[gi].value = std::max(out[gi].value, group_best(groups[gi], p));
    }
  }
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    out[gi].worst_arrangement = first_near(
        arrangements.size(), out[gi].value,
        [&](std::size_t p) { return group_best(groups[gi], p); }, true);
  }
  return out;
}

SecureGuardedValues secure_guarded_values(const ParkingLotGraph& graph,
                                          const Knowledge& knowledge,
                                          std::span<const VehicleAction> traversals,
                                          const LotActionSet& arrangements,
                                          const CostModel& model) {
  SecureGuardedValues out;
  out.secure = secure_value(graph, knowledge, traversals, arrangements, model).value;
  const auto groups = group_by_direction(traversals);
  for (const auto& d : guarded_value(graph, knowledge, traversals, groups, arrangements, model)) {
    out.guarded = std::min(out.guarded, d.value);
  }
  return out;
}

ActionSpaces action_spaces(const PlanningState& s, TraversalCache& cache,
                           const std::optional<SamplingConfig>& sampling, bool per_direction) {
  const auto& all = cache.get(s.current, s.knowledge.lanes_entered(), s.came_from);
  auto nodes = s.knowledge.unvisited_spot_nodes(s.graph);
  const int n_a = s.knowledge.n_available();
  const int n_u = s.knowledge.n_occupied();
  ActionSpaces out;
  if (!sampling) {
    out.traversals = all;
    out.arrangements =
        parking_lot_actions(feasible_x1_counts(n_a, n_u), n_a, n_u, std::move(nodes));
    return out;
  }
  Rng rng(derive_seed(sampling->seed, static_cast<std::uint64_t>(s.knowledge.cycle())));
  if (per_direction && !terminal(all)) {
    const auto groups = group_by_direction(all);
    for (std::size_t i : sample_grouped(groups, sampling->max_vehicle_actions, rng)) {
      out.traversals.push_back(all[i]);
    }
  } else {
    out.traversals = sample_actions(all, sampling->max_vehicle_actions, rng);
  }
  out.arrangements = sample_lot_actions(n_a, n_u, std::move(nodes), sampling->max_lot_actions, rng);
  return out;
}

Decision secure_decide(const PlanningState& s, TraversalCache& cache,
                       const std::optional<SamplingConfig>& sampling) {
  if (terminal(cache.get(s.current, s.knowledge.lanes_entered(), s.came_from))) {
    return finish(s);
  }
  const ActionSpaces spaces = action_spaces(s, cache, sampling, false);
  const MinimaxResult mm =
      secure_value(s.graph, s.knowledge, spaces.traversals, spaces.arrangements, s.cost);
  const VehicleAction& chosen = spaces.traversals[mm.action];

  Decision d;
  d.planned_action = chosen;
  d.value = mm.value;
  if (std::isfinite(mm.value) && s.knowledge.revealed_available(s.current)) {
    const ResponseTable table(s.graph, s.knowledge, chosen, spaces.arrangements.nodes(), s.cost);
    const BestResponse br = table.evaluate(spaces.arrangements, mm.worst_arrangement);
    if (br.target == s.current) {
      d.kind = Decision::Kind::kPark;
      d.park_node = s.current;
      return d;
    }
  }
  if (chosen.size() < 2) return finish(s);
  d.kind = Decision::Kind::kProceed;
  d.next_node = chosen[1];
  return d;
}

Decision guarded_decide(const PlanningState& s, TraversalCache& cache,
                        const std::optional<SamplingConfig>& sampling) {
  if (terminal(cache.get(s.current, s.knowledge.lanes_entered(), s.came_from))) {
    return finish(s);
  }
  const ActionSpaces spaces = action_spaces(s, cache, sampling, true);
  const auto groups = group_by_direction(spaces.traversals);
  const auto values = guarded_value(s.graph, s.knowledge, spaces.traversals, groups,
                                    spaces.arrangements, s.cost);
  double lowest = kInfiniteCost;
  for (const auto& v : values) lowest = std::min(lowest, v.value);
  // Groups are ordered by node id, so the first near-minimal one is the
  // lowest-index direction among ties.
  const std::size_t pick =
      first_near(values.size(), lowest, [&](std::size_t i) { return values[i].value; }, false);
  const DirectionValue& best = values[pick];

  Decision d;
  d.direction = best.next;
  d.value = best.value;
  if (s.knowledge.revealed_available(s.current)) {
    const double here =
        s.cost.weights.omega_t * terminal_cost(s.graph, s.current, s.cost.door);
    if (!(best.value < here - kCostTolerance)) {
      d.kind = Decision::Kind::kPark;
      d.park_node = s.current;
      return d;
    }
  }
  d.kind = Decision::Kind::kProceed;
  d.next_node = best.next;
  return d;
}

std::unique_ptr<Strategy> make_strategy(StrategyKind kind, const ParkingLotGraph& graph,
                                        const CostModel& cost,
                                        std::optional<SamplingConfig> sampling) {
  switch (kind) {
    case StrategyKind::kSecure: return std::make_unique<SecureStrategy>(graph, sampling);
    case StrategyKind::kGuarded: return std::make_unique<GuardedStrategy>(graph, sampling);
    case StrategyKind::kPrudent: return std::make_unique<PrudentStrategy>(graph, cost.door);
  }
  throw std::invalid_argument("unknown strategy kind");
}

}  // namespace parkgame
