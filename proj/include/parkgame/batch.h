#ifndef PARKGAME_BATCH_H_
#define PARKGAME_BATCH_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parkgame/sim.h"

namespace parkgame {

inline constexpr const char* kResultsVersionLine = "# parkgame results v1";
inline constexpr const char* kResultsHeader =
    "scenario,strategy,seed,outcome,total_cost,cycles,parked_node,path_length,wall_ms,error";
inline constexpr const char* kTraceVersionLine = "# parkgame trace v1";

struct ResultRow {
  std::string scenario;
  StrategyKind strategy = StrategyKind::kGuarded;
  std::uint64_t seed = 0;
  // parked, no_spot_failure or error.
  std::string outcome;
  double total_cost = kInfiniteCost;
  int cycles = 0;
  NodeId parked_node = kNoNode;
  std::size_t path_length = 0;
  double wall_ms = 0.0;
  std::string error;
};

// Writes the version line and the header.
void write_results_header(std::ostream& out);
void write_result_row(std::ostream& out, const ResultRow& row);
// Inverse of the two writers; throws std::runtime_error on a bad header.
std::vector<ResultRow> read_results(std::istream& in);

struct BatchJob {
  Scenario scenario;  // strategy and sampling seed already applied
  std::uint64_t seed = 0;
};

// Cartesian product in (scenario, strategy, seed) order. The seed replaces
// the sampling seed; scenarios without sampling keep running exactly.
std::vector<BatchJob> make_jobs(const std::vector<Scenario>& scenarios,
                                const std::vector<StrategyKind>& strategies,
                                const std::vector<std::uint64_t>& seeds);

struct GeneratorSpec {
  LotLayout layout;
  std::vector<double> fill_rates{0.5, 0.7, 0.9};
  // Scenarios per fill rate.
  int count = 1;
  std::uint64_t master_seed = 0;
  CostWeights weights{1.0, 10.0};
  EdgeCostMode edge_cost = EdgeCostMode::kUnit;
};

// Scenario i (over all fill rates) draws its occupancy from
// derive_seed(master_seed, i). Ids look like "gen-f0.70-00012".
std::vector<Scenario> generate_scenarios(const GeneratorSpec& spec);

struct BatchOptions {
  unsigned threads = 1;
  // One trace file per episode when set.
  std::optional<std::string> trace_dir;
};

// Runs every job; rows come back (and are passed to `on_row`, from the
// calling thread) in job order no matter how many workers run. Episode
// failures become rows with outcome "error".
std::vector<ResultRow> run_batch(const std::vector<BatchJob>& jobs, const BatchOptions& options,
                                 const std::function<void(const ResultRow&)>& on_row = {});

// One episode plus its row; never throws for episode errors.
ResultRow run_job(const BatchJob& job, EpisodeResult* episode = nullptr);

struct Trace {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::vector<CycleRecord> cycles;
  std::vector<NodeId> path;
  Outcome outcome = Outcome::kNoSpotFailure;
  std::optional<NodeId> parked_node;
  std::optional<Side> parked_side;
  double total_cost = kInfiniteCost;
};

Trace make_trace(const BatchJob& job, const EpisodeResult& episode);
void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);
std::string trace_file_name(const BatchJob& job);

struct ReplayReport {
  double logged_cost = kInfiniteCost;
  double rescored_cost = kInfiniteCost;
  bool cost_matches = false;
  // Re-running the episode reproduced the logged path and decisions.
  bool rerun_matches = false;
};

ReplayReport replay(const Trace& trace);

}  // namespace parkgame

#endif  // PARKGAME_BATCH_H_
