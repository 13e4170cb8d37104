// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. All thresholds are fixed below.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>

#include "oracles.h"
#include "parkgame/sim.h"

using namespace parkgame;

namespace {

constexpr double kTol = 1e-9;                // cost comparisons
constexpr int kMinPropertyStates = 500;      // criterion 1
constexpr int kMinOracleInstances = 1000;    // criterion 2
constexpr int kMaxArrangementNodes = 12;     // criterion 3
constexpr int kSamplingScenarios = 50;       // criterion 5
constexpr int kSweepPerFill = 334;           // criteria 6 and 7: 3 x 334 = 1002
constexpr double kLargeLotSeconds = 60.0;    // criterion 8
constexpr std::uint64_t kMasterSeed = 20240601;

int failures = 0;
long conservation_checks = 0;
long conservation_violations = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ParkingLotGraph lot(int lanes, int per) {
  LotLayout l;
  l.lane_count = lanes;
  l.nodes_per_lane = per;
  l.door = default_door(l);
  return build_lot(l);
}

void audit(const EpisodeResult& r, int total_spots) {
  for (const auto& c : r.log) {
    ++conservation_checks;
    if (c.n_available + c.n_occupied + c.revealed_spots != total_spots) ++conservation_violations;
  }
}

// Runs fn(i) for i in [0, n) on all cores.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

struct StateSample {
  ParkingLotGraph g;
  oracle::RandomState s;
  std::vector<VehicleAction> actions;
};

// Random reachable planning state with at least one move left.
StateSample random_planning_state(std::mt19937_64& rng, int max_lanes, int max_per) {
  while (true) {
    auto g = lot(1 + static_cast<int>(rng() % max_lanes), 1 + static_cast<int>(rng() % max_per));
    std::vector<bool> truth(g.spot_count());
    const double fill = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
    for (auto&& b : truth) b = std::uniform_real_distribution<double>(0, 1)(rng) >= fill;
    auto s = oracle::random_state(g, truth, static_cast<int>(rng() % 10), rng);
    auto actions = vehicle_traversals(g, s.current, s.knowledge.lanes_entered(),
                                      s.current == g.entrance() ? kNoNode : s.came_from);
    if (actions.empty() || actions[0].size() < 2) continue;
    return {std::move(g), std::move(s), std::move(actions)};
  }
}

CostModel random_model(std::mt19937_64& rng, const ParkingLotGraph& g) {
  return {{std::uniform_real_distribution<double>(0.5, 2.0)(rng),
           std::uniform_real_distribution<double>(0.5, 15.0)(rng)},
          rng() % 2 ? EdgeCostMode::kUnit : EdgeCostMode::kEuclidean,
          g.layout().door};
}

void criterion1() {
  std::mt19937_64 rng(derive_seed(kMasterSeed, 1));
  int states = 0, violations = 0;
  double min_gap = kInfiniteCost;
  while (states < kMinPropertyStates) {
    const auto p = random_planning_state(rng, 3, 3);
    const int n_a = p.s.knowledge.n_available();
    const int n_u = p.s.knowledge.n_occupied();
    const auto set = parking_lot_actions(feasible_x1_counts(n_a, n_u), n_a, n_u,
                                         p.s.knowledge.unvisited_spot_nodes(p.g));
    const auto v = secure_guarded_values(p.g, p.s.knowledge, p.actions, set, random_model(rng, p.g));
    const bool both_inf = std::isinf(v.secure) && std::isinf(v.guarded);
    if (!both_inf) {
      min_gap = std::min(min_gap, v.secure - v.guarded);
      if (v.secure < v.guarded - kTol) ++violations;
    }
    ++states;
  }
  report(1, violations == 0,
         std::to_string(states) + " states on lots <= 3x3, " + std::to_string(violations) +
             " violations of secure >= guarded (tol 1e-9), min gap " + fmt("%.3g", min_gap));
}

void criterion2() {
  std::mt19937_64 rng(derive_seed(kMasterSeed, 2));
  int instances = 0, mismatches = 0;
  while (instances < kMinOracleInstances) {
    // At most 9 spot-bearing nodes: 3x3, 2x4, 1x9 and smaller.
    const int lanes = 1 + static_cast<int>(rng() % 3);
    const int per = 1 + static_cast<int>(rng() % (9 / lanes));
    auto g = lot(lanes, per);
    std::vector<bool> truth(g.spot_count());
    for (auto&& b : truth) b = rng() % 2;
    const auto s = oracle::random_state(g, truth, static_cast<int>(rng() % 8), rng);
    const auto actions = vehicle_traversals(g, s.current, s.knowledge.lanes_entered(),
                                            s.current == g.entrance() ? kNoNode : s.came_from);
    if (actions.empty()) continue;
    const auto& av = actions[rng() % actions.size()];
    const auto nodes = s.knowledge.unvisited_spot_nodes(g);
    std::vector<std::uint8_t> states(nodes.size());
    for (auto& x : states) x = rng() % 2;
    const auto model = random_model(rng, g);
    const auto got = best_response_cost(g, s.knowledge, av, {nodes, states}, model);
    const auto want = oracle::best_response(g, s.knowledge, av, nodes, states, model);
    const bool cost_ok = (std::isinf(got.cost) && std::isinf(want.cost)) ||
                         std::abs(got.cost - want.cost) <= kTol;
    if (!cost_ok || got.target != want.target) ++mismatches;
    ++instances;
  }
  report(2, mismatches == 0,
         std::to_string(instances) + " random (a_v, a_p) pairs, <= 9 spot nodes, " +
             std::to_string(mismatches) + " mismatches against brute force (tol 1e-9)");
}

void criterion3() {
  // Pascal's triangle, independent of the library's binomial.
  std::vector<std::vector<double>> pascal(kMaxArrangementNodes + 1);
  for (int n = 0; n <= kMaxArrangementNodes; ++n) {
    pascal[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 1.0);
    for (int k = 1; k < n; ++k) {
      pascal[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
          pascal[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(k) - 1] +
          pascal[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(k)];
    }
  }
  int cases = 0, wrong = 0;
  std::size_t derived = 0;
  for (int n = 0; n <= kMaxArrangementNodes; ++n) {
    for (int n_a = 0; n_a <= 2 * n; ++n_a) {
      const int n_u = 2 * n - n_a;
      const auto counts = feasible_x1_counts(n_a, n_u);
      double expected = 0.0;
      for (int m : counts) expected += pascal[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
      std::vector<NodeId> nodes(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = i;
      const auto set = parking_lot_actions(counts, n_a, n_u, nodes);
      if (static_cast<double>(set.size()) != expected) ++wrong;
      if (n_a == 6 && n_u == 12) derived = set.size();
      ++cases;
    }
  }
  report(3, wrong == 0 && derived == 420,
         std::to_string(cases) + " (n_a, n_u) pairs with N <= 12, " + std::to_string(wrong) +
             " cardinality mismatches, (6, 12) -> " + std::to_string(derived));
}

void criterion4() {
  const auto fig = lot(3, 6);
  const auto at_entrance =
      vehicle_traversals(fig, fig.entrance(), {false, false, false}, kNoNode).size();
  int checked = 0, mismatches = 0;
  for (int lanes = 1; lanes <= 3; ++lanes) {
    for (int per = 1; per <= 4; ++per) {
      const auto g = lot(lanes, per);
      for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
        std::vector<NodeId> headings(g.neighbors(v).begin(), g.neighbors(v).end());
        if (v == g.entrance()) headings = {kNoNode};
        for (NodeId from : headings) {
          for (std::uint32_t done = 0; done < (1u << lanes); ++done) {
            std::vector<bool> lanes_done(static_cast<std::size_t>(lanes));
            for (int l = 0; l < lanes; ++l) lanes_done[static_cast<std::size_t>(l)] = (done >> l) & 1u;
            if (g.spot_bearing(v)) {
              if (!lanes_done[static_cast<std::size_t>(g.node(v).lane)]) continue;
            }
            auto got = vehicle_traversals(g, v, lanes_done, from);
            std::sort(got.begin(), got.end());
            if (got != oracle::traversals(g, v, lanes_done, from)) ++mismatches;
            ++checked;
          }
        }
      }
    }
  }
  report(4, at_entrance == 2 && mismatches == 0,
         std::to_string(at_entrance) + " traversals at the 3x6 entrance; " +
             std::to_string(checked) + " (node, heading, lane state) cases on lots <= 3x4, " +
             std::to_string(mismatches) + " differ from the exhaustive filter");
}

void criterion5() {
  std::mt19937_64 rng(derive_seed(kMasterSeed, 5));
  int scenarios = 0, differing = 0;
  for (int i = 0; i < kSamplingScenarios; ++i) {
    LotLayout l;
    l.lane_count = 1 + static_cast<int>(rng() % 3);
    l.nodes_per_lane = 1 + static_cast<int>(rng() % 4);
    l.door = default_door(l);
    const double fill = std::uniform_real_distribution<double>(0.3, 0.9)(rng);
    Scenario exact = random_scenario(l, fill, rng());
    const int total = static_cast<int>(exact.truth.spot_count());
    for (auto kind : {StrategyKind::kSecure, StrategyKind::kGuarded}) {
      exact.strategy = kind;
      exact.sampling.reset();
      Scenario sampled = exact;
      // Caps above every |A_v| and |A_p| these lots can produce.
      sampled.sampling = SamplingConfig{1u << 20, 1u << 20, rng()};
      const auto a = run_episode(exact);
      const auto b = run_episode(sampled);
      audit(a, total);
      audit(b, total);
      bool same = a.log.size() == b.log.size() && a.path == b.path;
      for (std::size_t c = 0; same && c < a.log.size(); ++c) same = a.log[c].decision == b.log[c].decision;
      if (!same) ++differing;
    }
    ++scenarios;
  }
  report(5, differing == 0,
         std::to_string(scenarios) + " scenarios x {secure, guarded}, " +
             std::to_string(differing) + " sampled episodes differ from exact");
}

struct SweepResult {
  std::vector<EpisodeResult> episodes;
  std::vector<Scenario> scenarios;
};

SweepResult sweep(StrategyKind kind, EdgeCostMode mode) {
  LotLayout l;
  l.lane_count = 3;
  l.nodes_per_lane = 6;
  l.door = default_door(l);
  SweepResult out;
  const double fills[] = {0.5, 0.7, 0.9};
  for (int f = 0; f < 3; ++f) {
    for (int i = 0; i < kSweepPerFill; ++i) {
      Scenario s = random_scenario(
          l, fills[f], derive_seed(kMasterSeed, 1000 + static_cast<std::uint64_t>(f * kSweepPerFill + i)));
      s.weights = {1.0, 10.0};
      s.edge_cost = mode;
      s.strategy = kind;
      out.scenarios.push_back(std::move(s));
    }
  }
  out.episodes.resize(out.scenarios.size());
  parallel_for(out.scenarios.size(), [&](std::size_t i) { out.episodes[i] = run_episode(out.scenarios[i]); });
  for (const auto& e : out.episodes) audit(e, 36);
  return out;
}

struct Stats {
  double mean = 0.0;
  int parked = 0;
  int failed = 0;
};

std::map<std::string, Stats> by_fill(const SweepResult& r) {
  std::map<std::string, Stats> out;
  for (std::size_t i = 0; i < r.episodes.size(); ++i) {
    const std::string key = fmt("%.1f", 1.0 - r.scenarios[i].truth.available_count() / 36.0);
    for (const std::string& k : {key, std::string("all")}) {
      auto& s = out[k];
      if (r.episodes[i].outcome == Outcome::kParked) {
        s.mean += r.episodes[i].total_cost;
        ++s.parked;
      } else {
        ++s.failed;
      }
    }
  }
  for (auto& [k, s] : out) {
    if (s.parked) s.mean /= s.parked;
  }
  return out;
}

void print_table(const char* title, const std::map<std::string, Stats>& a, const char* an,
                 const std::map<std::string, Stats>& b, const char* bn) {
  std::printf("  %s\n  %-5s %10s %6s %10s %6s\n", title, "fill", an, "fail", bn, "fail");
  for (const auto& [k, s] : a) {
    const auto& t = b.at(k);
    std::printf("  %-5s %10.3f %6d %10.3f %6d\n", k.c_str(), s.mean, s.failed, t.mean, t.failed);
  }
}

bool parks_only_on_free(const SweepResult& r) {
  for (std::size_t i = 0; i < r.episodes.size(); ++i) {
    const auto& e = r.episodes[i];
    if (e.parked_node && r.scenarios[i].truth.node_state(*e.parked_node) != NodeState::kAvailable)
      return false;
  }
  return true;
}

void criteria6and7() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto secure = sweep(StrategyKind::kSecure, EdgeCostMode::kUnit);
  const auto guarded = sweep(StrategyKind::kGuarded, EdgeCostMode::kUnit);
  const auto s = by_fill(secure), g = by_fill(guarded);
  print_table("unit edges, weights (1, 10), 3x6 lot", g, "guarded", s, "secure");
  const bool ok6 = g.at("all").failed == 0 && s.at("all").failed == 0 &&
                   g.at("all").mean <= s.at("all").mean + kTol;
  report(6, ok6,
         std::to_string(secure.episodes.size()) + " scenarios, mean guarded " +
             fmt("%.4f", g.at("all").mean) + " <= mean secure " + fmt("%.4f", s.at("all").mean) +
             fmt(" (%.0f s)", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()));

  const auto t1 = std::chrono::steady_clock::now();
  const auto guarded_e = sweep(StrategyKind::kGuarded, EdgeCostMode::kEuclidean);
  const auto prudent_e = sweep(StrategyKind::kPrudent, EdgeCostMode::kEuclidean);
  const auto ge = by_fill(guarded_e), pe = by_fill(prudent_e);
  print_table("euclidean edges, weights (1, 10), 3x6 lot", ge, "guarded", pe, "prudent");
  const bool honest = parks_only_on_free(guarded_e);
  const bool ok7 = honest && ge.at("all").failed == 0 && pe.at("all").failed == 0 &&
                   ge.at("all").mean <= pe.at("all").mean + kTol;
  report(7, ok7,
         std::to_string(guarded_e.episodes.size()) + " scenarios, mean guarded " +
             fmt("%.4f", ge.at("all").mean) + " <= mean prudent " + fmt("%.4f", pe.at("all").mean) +
             ", guarded parked on occupied: " + (honest ? "never" : "YES") +
             fmt(" (%.0f s)", std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count()));
}

void criterion8() {
  LotLayout l;
  l.lane_count = 5;
  l.nodes_per_lane = 18;
  l.door = default_door(l);
  Scenario s = random_scenario(l, 138.0 / 180.0, derive_seed(kMasterSeed, 8));
  s.strategy = StrategyKind::kGuarded;
  s.edge_cost = EdgeCostMode::kEuclidean;
  s.sampling = SamplingConfig{1000, 1000, 7};
  double worst_seconds = 0.0;
  EpisodeResult first;
  bool deterministic = true;
  for (int run = 0; run < 2; ++run) {
    const auto t0 = std::chrono::steady_clock::now();
    EpisodeResult r = run_episode(s);
    worst_seconds = std::max(
        worst_seconds, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    audit(r, 180);
    if (run == 0) {
      first = std::move(r);
    } else {
      deterministic = r.path == first.path && r.total_cost == first.total_cost;
    }
  }
  const bool ok = s.truth.available_count() == 42 && first.outcome == Outcome::kParked &&
                  deterministic && worst_seconds < kLargeLotSeconds;
  report(8, ok,
         "180 spots, " + std::to_string(s.truth.available_count()) + " free, caps 1000: " +
             std::string(to_string(first.outcome)) + " after " + std::to_string(first.cycles) +
             " cycles, cost " + fmt("%.3f", first.total_cost) + ", repeat identical: " +
             (deterministic ? "yes" : "no") + fmt(", slowest run %.2f s (limit 60 s)", worst_seconds));
}

}  // namespace

int main() {
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criteria6and7();
    criterion8();
  } catch (const std::exception& e) {
    std::printf("aborted: %s\n", e.what());
    ++failures;
  }
  report(9, conservation_violations == 0 && conservation_checks > 0,
         std::to_string(conservation_checks) + " cycle records across every episode above, " +
             std::to_string(conservation_violations) + " conservation violations");
  return failures == 0 ? 0 : 1;
}
