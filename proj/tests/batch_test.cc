#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "parkgame/batch.h"
#include "parkgame/scenario_io.h"

using namespace parkgame;

namespace {

std::vector<Scenario> small_sweep(int count) {
  GeneratorSpec spec;
  spec.layout.lane_count = 2;
  spec.layout.nodes_per_lane = 3;
  spec.layout.door = default_door(spec.layout);
  spec.count = count;
  spec.master_seed = 17;
  return generate_scenarios(spec);
}

const std::vector<StrategyKind> kAll{StrategyKind::kSecure, StrategyKind::kGuarded,
                                     StrategyKind::kPrudent};

std::string csv(const std::vector<ResultRow>& rows, bool with_time) {
  std::ostringstream out;
  write_results_header(out);
  for (auto r : rows) {
    if (!with_time) r.wall_ms = 0;
    write_result_row(out, r);
  }
  return out.str();
}

}  // namespace

TEST_CASE("one scenario, three strategies, one seed: three rows") {
  const auto jobs = make_jobs({small_sweep(1).front()}, kAll, {0});
  CHECK(jobs.size() == 3);
  const auto rows = run_batch(std::vector<BatchJob>(jobs.begin(), jobs.begin() + 3), {});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].strategy == StrategyKind::kSecure);
  CHECK(rows[1].strategy == StrategyKind::kGuarded);
  CHECK(rows[2].strategy == StrategyKind::kPrudent);
}

TEST_CASE("rows come out in job order and do not depend on worker count") {
  const auto jobs = make_jobs(small_sweep(4), kAll, {0, 1});
  CHECK(jobs.size() == 3 * 4 * 3 * 2);
  const auto one = run_batch(jobs, {1, std::nullopt});
  std::vector<std::string> streamed;
  const auto four = run_batch(jobs, {4, std::nullopt}, [&](const ResultRow& r) {
    streamed.push_back(r.scenario + "/" + std::string(to_string(r.strategy)) + "/" +
                       std::to_string(r.seed));
  });
  CHECK(csv(one, false) == csv(four, false));
  REQUIRE(streamed.size() == jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    CHECK(streamed[i] == jobs[i].scenario.id + "/" +
                             std::string(to_string(jobs[i].scenario.strategy)) + "/" +
                             std::to_string(jobs[i].seed));
  }
}

TEST_CASE("episode failures become rows") {
  std::vector<Scenario> scenarios{small_sweep(1).front()};
  scenarios[0].truth = GroundTruth(std::vector<bool>(5, true));  // wrong size
  const auto rows = run_batch(make_jobs(scenarios, {StrategyKind::kGuarded}, {0}), {});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].outcome == "error");
  CHECK_FALSE(rows[0].error.empty());
}

TEST_CASE("results csv round-trips") {
  const auto rows = run_batch(make_jobs(small_sweep(1), kAll, {3}), {});
  std::istringstream in(csv(rows, true));
  const auto back = read_results(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].scenario == rows[i].scenario);
    CHECK(back[i].outcome == rows[i].outcome);
    CHECK(back[i].total_cost == rows[i].total_cost);
    CHECK(back[i].parked_node == rows[i].parked_node);
    CHECK(back[i].wall_ms == rows[i].wall_ms);
  }
  std::istringstream bad("scenario,strategy\n");
  CHECK_THROWS(read_results(bad));
}

TEST_CASE("traces round-trip and replay to the logged cost") {
  for (const auto& job : make_jobs(small_sweep(3), kAll, {0})) {
    EpisodeResult episode;
    const ResultRow row = run_job(job, &episode);
    REQUIRE(row.outcome != "error");
    std::stringstream buf;
    write_trace(buf, make_trace(job, episode));
    const Trace t = read_trace(buf);
    CHECK(t.scenario == job.scenario);
    CHECK(t.path == episode.path);
    CHECK(t.total_cost == episode.total_cost);
    REQUIRE(t.cycles.size() == episode.log.size());
    for (std::size_t i = 0; i < t.cycles.size(); ++i) {
      CHECK(t.cycles[i].decision == episode.log[i].decision);
    }
    const ReplayReport rep = replay(t);
    CHECK(rep.cost_matches);
    CHECK(rep.rerun_matches);
  }
}

TEST_CASE("a doctored trace fails replay") {
  const auto job = make_jobs(small_sweep(1), {StrategyKind::kGuarded}, {0}).front();
  EpisodeResult episode;
  run_job(job, &episode);
  Trace t = make_trace(job, episode);
  if (t.outcome == Outcome::kParked) {
    t.total_cost += 1.0;
    CHECK_FALSE(replay(t).cost_matches);
  }
  std::istringstream junk("# parkgame trace v1\nwhat 1\n");
  CHECK_THROWS(read_trace(junk));
}

TEST_CASE("trace files are written per episode") {
  const auto dir = std::filesystem::temp_directory_path() / "parkgame_batch_test_traces";
  std::filesystem::remove_all(dir);
  const auto jobs = make_jobs(small_sweep(1), kAll, {0});
  run_batch(jobs, {2, dir.string()});
  for (const auto& job : jobs) {
    std::ifstream in(dir / trace_file_name(job));
    REQUIRE(in);
    CHECK(replay(read_trace(in)).cost_matches);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("generated scenarios are reproducible") {
  const auto a = small_sweep(5);
  const auto b = small_sweep(5);
  REQUIRE(a.size() == 15);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(a[0].id == "gen-f0.50-00000");
}
