#include <doctest.h>

#include <algorithm>
#include <set>

#include "parkgame/sim.h"

using namespace parkgame;

namespace {

LotLayout layout(int lanes, int per, Point door) {
  LotLayout l;
  l.lane_count = lanes;
  l.nodes_per_lane = per;
  l.door = door;
  return l;
}

// Spot bitmap with every node occupied except the listed (node, side) pairs.
GroundTruth only_free(std::size_t spots, std::initializer_list<std::pair<NodeId, Side>> free) {
  std::vector<bool> bits(spots, false);
  for (auto [n, s] : free) bits[2 * static_cast<std::size_t>(n) + (s == Side::kRight ? 1 : 0)] = true;
  return GroundTruth(bits);
}

Scenario make(const LotLayout& l, GroundTruth truth, StrategyKind kind,
              EdgeCostMode mode = EdgeCostMode::kUnit) {
  Scenario s;
  s.layout = l;
  s.truth = std::move(truth);
  s.strategy = kind;
  s.edge_cost = mode;
  return s;
}

}  // namespace

TEST_CASE("perceive") {
  const auto l = layout(3, 6, {0, 3});
  const ParkingLotGraph g(l);
  // v2 and v11 have a free spot, v4 has none.
  const auto truth = only_free(g.spot_count(), {{1, Side::kLeft}, {10, Side::kRight}});
  CHECK(perceive(g, truth, 1)->state() == NodeState::kAvailable);
  CHECK(perceive(g, truth, 10)->state() == NodeState::kAvailable);
  CHECK(perceive(g, truth, 3)->state() == NodeState::kOccupied);
  CHECK_FALSE(perceive(g, truth, g.entrance()));
  const auto obs = *perceive(g, truth, 1);
  CHECK(obs.left_available);
  CHECK_FALSE(obs.right_available);
}

TEST_CASE("score") {
  const auto l = layout(2, 3, {1.0, 2.0});
  const ParkingLotGraph g(l);
  auto s = make(l, GroundTruth::all_available(g), StrategyKind::kGuarded);
  // One edge from the near connector to node 0, which is 2 from the door.
  const std::vector<NodeId> path{g.connector(0, false), 0};
  CHECK(score(g, path, 0, s) == doctest::Approx(21.0));
  CHECK(score(g, path, 0, s) == score(g, path, 0, s));
  s.truth = only_free(g.spot_count(), {{1, Side::kLeft}});
  CHECK_THROWS_AS(score(g, path, 0, s), IntegrityError);
  CHECK_THROWS(score(g, path, 1, s));
}

TEST_CASE("random scenarios hit the exact occupied count") {
  const auto small = layout(3, 6, {0, 3});
  CHECK(random_scenario(small, 0.0, 1).truth.available_count() == 36);
  CHECK(random_scenario(small, 1.0, 1).truth.available_count() == 0);
  const auto big = layout(5, 18, {0, 5});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(random_scenario(big, 138.0 / 180.0, seed).truth.available_count() == 42);
  }
  CHECK(random_scenario(big, 0.5, 3) == random_scenario(big, 0.5, 3));
  CHECK_THROWS(random_scenario(big, 1.5, 3));
}

TEST_CASE("first node reached is free and nearest the door: park at cycle 2") {
  // Door on top of node 0; cycle 0 at the entrance, cycle 1 at the connector.
  const auto l = layout(2, 3, {1.0, 0.0});
  const ParkingLotGraph g(l);
  for (auto kind : {StrategyKind::kSecure, StrategyKind::kGuarded}) {
    const auto r = run_episode(make(l, GroundTruth::all_available(g), kind));
    CHECK(r.outcome == Outcome::kParked);
    CHECK(r.parked_node == 0);
    CHECK(r.cycles == 2);
    CHECK(r.path == std::vector<NodeId>{g.entrance(), g.connector(0, false), 0});
  }
}

TEST_CASE("all occupied ends in failure within the cycle bound") {
  for (auto kind : {StrategyKind::kSecure, StrategyKind::kGuarded, StrategyKind::kPrudent}) {
    const auto l = layout(3, 3, {0, 3});
    const ParkingLotGraph g(l);
    const auto r = run_episode(make(l, GroundTruth(std::vector<bool>(g.spot_count(), false)), kind));
    CHECK(r.outcome == Outcome::kNoSpotFailure);
    CHECK_FALSE(r.parked_node);
    CHECK(r.cycles <= cycle_bound(g));
    CHECK(r.total_cost == kInfiniteCost);
  }
}

TEST_CASE("parked side prefers the side nearer the door") {
  const auto l = layout(2, 2, {1.0, -1.0});
  const ParkingLotGraph g(l);
  // Door below node 0: the left (-y) spot is nearer.
  auto r = run_episode(make(l, GroundTruth::all_available(g), StrategyKind::kGuarded));
  CHECK(r.parked_side == Side::kLeft);
  // Only the right spot free.
  r = run_episode(make(l, only_free(g.spot_count(), {{0, Side::kRight}}), StrategyKind::kGuarded));
  CHECK(r.parked_node == 0);
  CHECK(r.parked_side == Side::kRight);
}

TEST_CASE("episodes are deterministic and read only perceived spots") {
  const auto l = layout(3, 4, {0, 3});
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (auto kind : {StrategyKind::kSecure, StrategyKind::kGuarded, StrategyKind::kPrudent}) {
      auto s = random_scenario(l, 0.7, seed);
      s.strategy = kind;
      const auto a = run_episode(s);
      const auto b = run_episode(s);
      CHECK(a.path == b.path);
      CHECK(a.total_cost == b.total_cost);
      REQUIRE(a.log.size() == b.log.size());
      for (std::size_t i = 0; i < a.log.size(); ++i) CHECK(a.log[i].decision == b.log[i].decision);
      // Two reads per first arrival at a spot node plus two for the side choice.
      const ParkingLotGraph g(l);
      std::set<NodeId> spots;
      for (NodeId n : a.path) {
        if (g.spot_bearing(n)) spots.insert(n);
      }
      CHECK(a.truth_reads == 2 * spots.size() + (a.parked_node ? 2 : 0));
    }
  }
}

TEST_CASE("decisions respect their invariants and counts are conserved") {
  const auto l = layout(3, 3, {0, 3});
  const ParkingLotGraph g(l);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (auto kind : {StrategyKind::kSecure, StrategyKind::kGuarded, StrategyKind::kPrudent}) {
      auto s = random_scenario(l, 0.6, seed);
      s.strategy = kind;
      const auto r = run_episode(s);
      for (const auto& c : r.log) {
        CHECK(c.n_available + c.n_occupied + c.revealed_spots == static_cast<int>(g.spot_count()));
      }
      for (std::size_t i = 0; i + 1 < r.log.size(); ++i) {
        CHECK(r.log[i].decision.kind == Decision::Kind::kProceed);
        CHECK(r.log[i + 1].node == r.log[i].decision.next_node);
      }
      if (r.parked_node) {
        CHECK(s.truth.node_state(*r.parked_node) == NodeState::kAvailable);
        CHECK(r.path.back() == *r.parked_node);
      }
    }
  }
}

TEST_CASE("prudent skips the only top-row spot and parks at the first spot of the next row") {
  // Door above the top-left corner; lane 2 is the top row.
  const auto l = layout(3, 4, {0.0, 3.0});
  const ParkingLotGraph g(l);
  const NodeId top_only = g.spot_node(2, 2);
  const NodeId second_row_last = g.spot_node(1, 3);
  const NodeId second_row_first = g.spot_node(1, 0);
  const auto truth = only_free(g.spot_count(), {{top_only, Side::kLeft},
                                                {second_row_last, Side::kRight},
                                                {second_row_first, Side::kLeft}});
  const auto r = run_episode(make(l, truth, StrategyKind::kPrudent, EdgeCostMode::kEuclidean));
  REQUIRE(r.outcome == Outcome::kParked);
  // Entered the top row, passed its only spot, came down the far side and took
  // the first free spot met in lane 1.
  CHECK(std::count(r.path.begin(), r.path.end(), top_only) == 1);
  CHECK(r.parked_node == second_row_last);
}

TEST_CASE("prudent parks at the second of two free spots when it is nearer the door") {
  // Door above the top-right corner so travel along the top row approaches it.
  const auto l = layout(3, 4, {5.0, 3.0});
  const ParkingLotGraph g(l);
  const auto truth = only_free(g.spot_count(), {{g.spot_node(2, 0), Side::kLeft},
                                                {g.spot_node(2, 2), Side::kLeft},
                                                {g.spot_node(2, 3), Side::kRight}});
  const auto r = run_episode(make(l, truth, StrategyKind::kPrudent, EdgeCostMode::kEuclidean));
  REQUIRE(r.outcome == Outcome::kParked);
  CHECK(r.parked_node == g.spot_node(2, 3));
}

TEST_CASE("prudent drives through a full row to the next one") {
  const auto l = layout(3, 4, {0.0, 3.0});
  const ParkingLotGraph g(l);
  const auto truth = only_free(g.spot_count(), {{g.spot_node(1, 3), Side::kLeft},
                                                {g.spot_node(1, 1), Side::kLeft}});
  const auto r = run_episode(make(l, truth, StrategyKind::kPrudent, EdgeCostMode::kEuclidean));
  REQUIRE(r.outcome == Outcome::kParked);
  for (NodeId n : g.lane_nodes(2)) CHECK(std::count(r.path.begin(), r.path.end(), n) >= 1);
  // First free spot in lane 1 (node at slot 3) is skipped; slot 1 is nearer.
  CHECK(r.parked_node == g.spot_node(1, 1));
}

TEST_CASE("invalid scenarios") {
  auto l = layout(2, 2, {0, 2});
  auto s = make(l, GroundTruth(std::vector<bool>(7, true)), StrategyKind::kGuarded);
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s.truth = GroundTruth(std::vector<bool>(8, true));
  s.weights.omega_r = -1;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
}
