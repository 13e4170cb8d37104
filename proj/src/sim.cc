#include "parkgame/sim.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace parkgame {

std::string_view to_string(Side side) { return side == Side::kLeft ? "left" : "right"; }

std::string_view to_string(Outcome outcome) {
  return outcome == Outcome::kParked ? "parked" : "no_spot_failure";
}

bool GroundTruth::available(NodeId node, Side side) const {
  const auto i = 2 * static_cast<std::size_t>(node) + (side == Side::kRight ? 1 : 0);
  if (node < 0 || i >= available_.size()) {
    throw std::out_of_range("no spot at node " + std::to_string(node));
  }
  return available_[i];
}

NodeState GroundTruth::node_state(NodeId node) const {
  return (available(node, Side::kLeft) || available(node, Side::kRight)) ? NodeState::kAvailable
                                                                         : NodeState::kOccupied;
}

int GroundTruth::available_count() const {
  return static_cast<int>(std::count(available_.begin(), available_.end(), true));
}

void validate(const Scenario& scenario) {
  const ParkingLotGraph graph(scenario.layout);
  if (scenario.truth.spot_count() != graph.spot_count()) {
    throw std::invalid_argument("ground truth has " + std::to_string(scenario.truth.spot_count()) +
                                " spots, lot has " + std::to_string(graph.spot_count()));
  }
  validate(scenario.weights);
  if (scenario.sampling && (scenario.sampling->max_vehicle_actions == 0 ||
                            scenario.sampling->max_lot_actions == 0)) {
    throw std::invalid_argument("sampling caps must be at least 1");
  }
}

std::optional<SpotObservation> perceive(const ParkingLotGraph& graph, const GroundTruth& truth,
                                        NodeId node) {
  if (!graph.contains(node) || !graph.spot_bearing(node)) return std::nullopt;
  return SpotObservation{node, truth.available(node, Side::kLeft),
                         truth.available(node, Side::kRight)};
}

double score(const ParkingLotGraph& graph, std::span<const NodeId> path, NodeId parked,
             const Scenario& scenario) {
  if (path.empty() || path.back() != parked) {
    throw std::invalid_argument("parked node must end the path");
  }
  if (!graph.spot_bearing(parked) ||
      scenario.truth.node_state(parked) != NodeState::kAvailable) {
    throw IntegrityError("vehicle parked at node " + std::to_string(parked) +
                         " whose spots are all occupied");
  }
  return total_cost(graph, path, scenario.cost_model());
}

int cycle_bound(const ParkingLotGraph& graph) {
  return static_cast<int>(graph.node_count()) * graph.lane_count();
}

namespace {

Side choose_side(const ParkingLotGraph& graph, const GroundTruth& truth, NodeId node,
                 Point door, std::size_t& reads) {
  reads += 2;
  const bool left = truth.available(node, Side::kLeft);
  const bool right = truth.available(node, Side::kRight);
  if (left != right) return left ? Side::kLeft : Side::kRight;
  const Point p = graph.node(node).position;
  const double half = graph.layout().pitch / 2.0;
  const double dl = distance({p.x, p.y - half}, door);
  const double dr = distance({p.x, p.y + half}, door);
  return dr < dl - kCostTolerance ? Side::kRight : Side::kLeft;
}

}  // namespace

EpisodeResult run_episode(const Scenario& scenario) {
  validate(scenario);
  const ParkingLotGraph graph(scenario.layout);
  const CostModel cost = scenario.cost_model();
  const GroundTruth& truth = scenario.truth;
  Knowledge knowledge =
      init_knowledge(graph, truth.available_count(), truth.occupied_count());
  auto strategy = make_strategy(scenario.strategy, graph, cost, scenario.sampling);

  EpisodeResult result;
  NodeId current = graph.entrance();
  NodeId came_from = kNoNode;
  result.path.push_back(current);
  const int bound = cycle_bound(graph);

  while (true) {
    const PlanningState state{graph, knowledge, current, came_from, cost};
    CycleRecord record{knowledge.cycle(), current, knowledge.n_available(),
                       knowledge.n_occupied(), knowledge.revealed_spot_count(),
                       strategy->decide(state)};
    const Decision decision = record.decision;
    result.log.push_back(std::move(record));

    if (decision.kind == Decision::Kind::kNoSpot) {
      result.outcome = Outcome::kNoSpotFailure;
      break;
    }
    if (decision.kind == Decision::Kind::kPark) {
      if (decision.park_node != current || !knowledge.revealed_available(current)) {
        throw IntegrityError("strategy parked at node " + std::to_string(decision.park_node) +
                             " which is not a known available current node");
      }
      result.total_cost = score(graph, result.path, current, scenario);
      result.parked_node = current;
      result.parked_side = choose_side(graph, truth, current, cost.door, result.truth_reads);
      result.outcome = Outcome::kParked;
      break;
    }

    const auto options = next_options(graph, current, came_from);
    if (std::find(options.begin(), options.end(), decision.next_node) == options.end()) {
      throw IntegrityError("illegal move from node " + std::to_string(current) + " to " +
                           std::to_string(decision.next_node));
    }
    came_from = current;
    current = decision.next_node;
    result.path.push_back(current);
    knowledge = knowledge.advance_cycle();
    if (graph.spot_bearing(current) && !knowledge.visited(current)) {
      result.truth_reads += 2;
      knowledge = knowledge.observe(graph, *perceive(graph, truth, current));
    } else {
      knowledge = knowledge.arrive(graph, current);
    }
    if (!knowledge.conserved()) {
      throw IntegrityError("spot counts not conserved at cycle " +
                           std::to_string(knowledge.cycle()));
    }
    if (knowledge.cycle() > bound) {
      throw IntegrityError("episode exceeded " + std::to_string(bound) + " cycles");
    }
  }
  result.cycles = knowledge.cycle();
  return result;
}

Point default_door(const LotLayout& layout) {
  const double x = layout.entrance == EntranceSide::kLeft
                       ? 0.0
                       : (layout.nodes_per_lane + 1) * layout.pitch;
  return {x, layout.lane_count * layout.pitch};
}

Scenario random_scenario(const LotLayout& layout, double fill_rate, std::uint64_t seed) {
  if (!(fill_rate >= 0.0 && fill_rate <= 1.0)) {
    throw std::invalid_argument("fill rate must lie in [0, 1]");
  }
  const ParkingLotGraph graph(layout);
  const std::size_t spots = graph.spot_count();
  Rng rng(seed);
  std::bernoulli_distribution occupied(fill_rate);
  std::vector<bool> available(spots);
  std::size_t n_occupied = 0;
  for (std::size_t i = 0; i < spots; ++i) {
    available[i] = !occupied(rng);
    n_occupied += available[i] ? 0 : 1;
  }
  const auto target = static_cast<std::size_t>(std::llround(fill_rate * static_cast<double>(spots)));
  std::uniform_int_distribution<std::size_t> any(0, spots - 1);
  while (n_occupied != target) {
    const std::size_t i = any(rng);
    if (n_occupied > target && !available[i]) {
      available[i] = true;
      --n_occupied;
    } else if (n_occupied < target && available[i]) {
      available[i] = false;
      ++n_occupied;
    }
  }
  Scenario s;
  s.id = "random-" + std::to_string(seed);
  s.layout = layout;
  s.truth = GroundTruth(std::move(available));
  return s;
}

}  // namespace parkgame
