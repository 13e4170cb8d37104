// parkgame: run single episodes, batches and trace replays from the shell.
//
//   parkgame run --scenario lot.yaml [--strategy guarded] [--trace out.trace]
//   parkgame batch --lanes 3 --nodes 6 --fill 0.5,0.7,0.9 --count 100 \
//                  --strategies secure,guarded --threads 4 --out results.csv
//   parkgame replay out.trace
//   parkgame check lot.yaml
//
// Exit status: 0 on success, 1 when a replay disagrees with its trace,
// 2 on input errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "parkgame/batch.h"
#include "parkgame/scenario_io.h"

namespace {

using namespace parkgame;

struct SamplingFlags {
  std::optional<std::size_t> max_vehicle_actions;
  std::optional<std::size_t> max_lot_actions;

  void add(CLI::App* app) {
    app->add_option("--max-vehicle-actions", max_vehicle_actions,
                    "Sample at most this many traversals per cycle")
        ->check(CLI::PositiveNumber);
    app->add_option("--max-lot-actions", max_lot_actions,
                    "Sample at most this many arrangements per cycle")
        ->check(CLI::PositiveNumber);
  }

  void apply(Scenario& s) const {
    if (!max_vehicle_actions && !max_lot_actions) return;
    SamplingConfig cfg = s.sampling.value_or(SamplingConfig{});
    if (max_vehicle_actions) cfg.max_vehicle_actions = *max_vehicle_actions;
    if (max_lot_actions) cfg.max_lot_actions = *max_lot_actions;
    s.sampling = cfg;
  }
};

std::vector<StrategyKind> parse_strategies(const std::vector<std::string>& names) {
  std::vector<StrategyKind> out;
  for (const auto& n : names) out.push_back(parse_strategy_kind(n));
  return out;
}

// Results go to `path`, or stdout when it is empty or "-".
struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    stream = &file;
  }
};

void print_summary(const std::vector<ResultRow>& rows) {
  struct Acc {
    int n = 0, parked = 0, errors = 0;
    double cost = 0.0;
  };
  std::map<std::string, Acc> by;
  for (const auto& r : rows) {
    auto& a = by[std::string(to_string(r.strategy))];
    ++a.n;
    if (r.outcome == "parked") {
      ++a.parked;
      a.cost += r.total_cost;
    }
    if (r.outcome == "error") ++a.errors;
  }
  std::fprintf(stderr, "%-9s %7s %7s %7s %12s\n", "strategy", "runs", "parked", "errors",
               "mean_cost");
  for (const auto& [name, a] : by) {
    std::fprintf(stderr, "%-9s %7d %7d %7d %12.4f\n", name.c_str(), a.n, a.parked, a.errors,
                 a.parked ? a.cost / a.parked : 0.0);
  }
}

int cmd_run(const std::string& scenario_path, const std::optional<std::string>& strategy,
            const SamplingFlags& sampling, std::optional<std::uint64_t> seed,
            const std::string& out_path, const std::string& trace_path) {
  Scenario s = load_scenario(scenario_path);
  if (strategy) s.strategy = parse_strategy_kind(*strategy);
  sampling.apply(s);
  const std::uint64_t job_seed = seed.value_or(s.sampling ? s.sampling->seed : 0);
  if (s.sampling) s.sampling->seed = job_seed;
  const BatchJob job{s, job_seed};

  EpisodeResult episode;
  const ResultRow row = run_job(job, &episode);
  Output out(out_path);
  write_results_header(*out.stream);
  write_result_row(*out.stream, row);
  if (row.outcome == "error") {
    std::cerr << "episode failed: " << row.error << '\n';
    return 1;
  }
  if (!trace_path.empty()) {
    std::ofstream t(trace_path);
    if (!t) throw std::runtime_error("cannot write " + trace_path);
    write_trace(t, make_trace(job, episode));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-theoretic parking-spot search simulator"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one episode from a scenario file");
  std::string run_scenario, run_out, run_trace;
  std::optional<std::string> run_strategy;
  std::optional<std::uint64_t> run_seed;
  SamplingFlags run_sampling;
  run->add_option("-s,--scenario", run_scenario, "Scenario YAML file")->required();
  run->add_option("--strategy", run_strategy, "secure | guarded | prudent (overrides file)");
  run->add_option("--seed", run_seed, "Sampling seed (overrides file)");
  run->add_option("-o,--out", run_out, "Results CSV path (default stdout)");
  run->add_option("--trace", run_trace, "Write a per-cycle trace here");
  run_sampling.add(run);

  // batch
  auto* batch = app.add_subcommand("batch", "Run strategies over scenario files or generated lots");
  std::vector<std::string> batch_files;
  std::vector<std::string> batch_strategies{"secure", "guarded", "prudent"};
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_count = 1;
  unsigned threads = 1;
  std::string batch_out, trace_dir;
  int gen_lanes = 0, gen_nodes = 0, gen_count = 0;
  std::vector<double> gen_fill{0.5, 0.7, 0.9};
  std::uint64_t gen_seed = 0;
  double gen_pitch = 1.0;
  std::string gen_edge_cost = "unit";
  double omega_r = 1.0, omega_t = 10.0;
  SamplingFlags batch_sampling;
  bool summary = false;
  batch->add_option("-s,--scenario", batch_files, "Scenario YAML files");
  batch->add_option("--strategies", batch_strategies, "Comma-separated strategies")
      ->delimiter(',');
  batch->add_option("--seed-begin", seed_begin, "First episode seed");
  batch->add_option("--seeds", seed_count, "Number of seeds per (scenario, strategy)");
  batch->add_option("-j,--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  batch->add_option("-o,--out", batch_out, "Results CSV path (default stdout)");
  batch->add_option("--trace-dir", trace_dir, "Write one trace file per episode here");
  batch->add_option("--lanes", gen_lanes, "Generator: horizontal lanes");
  batch->add_option("--nodes", gen_nodes, "Generator: spot nodes per lane");
  batch->add_option("--fill", gen_fill, "Generator: comma-separated fill rates")->delimiter(',');
  batch->add_option("--count", gen_count, "Generator: scenarios per fill rate");
  batch->add_option("--generator-seed", gen_seed, "Generator: master seed for occupancy");
  batch->add_option("--pitch", gen_pitch, "Generator: node spacing");
  batch->add_option("--edge-cost", gen_edge_cost, "Generator: unit | euclidean")
      ->check(CLI::IsMember({"unit", "euclidean"}));
  batch->add_option("--omega-r", omega_r, "Generator: running-cost weight");
  batch->add_option("--omega-t", omega_t, "Generator: terminal-cost weight");
  batch->add_flag("--summary", summary, "Print mean cost per strategy to stderr");
  batch_sampling.add(batch);

  // replay
  auto* rep = app.add_subcommand("replay", "Re-score a trace and re-run its episode");
  std::string replay_path;
  rep->add_option("trace", replay_path, "Trace file")->required();

  // check
  auto* check = app.add_subcommand("check", "Validate a scenario file");
  std::string check_path;
  check->add_option("scenario", check_path, "Scenario YAML file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      return cmd_run(run_scenario, run_strategy, run_sampling, run_seed, run_out, run_trace);
    }
    if (*batch) {
      std::vector<Scenario> scenarios;
      for (const auto& f : batch_files) scenarios.push_back(load_scenario(f));
      if (gen_count > 0) {
        if (gen_lanes < 1 || gen_nodes < 1) {
          throw std::invalid_argument("--count needs --lanes and --nodes");
        }
        GeneratorSpec spec;
        spec.layout.lane_count = gen_lanes;
        spec.layout.nodes_per_lane = gen_nodes;
        spec.layout.pitch = gen_pitch;
        spec.layout.door = default_door(spec.layout);
        spec.fill_rates = gen_fill;
        spec.count = gen_count;
        spec.master_seed = gen_seed;
        spec.weights = {omega_r, omega_t};
        validate(spec.weights);
        spec.edge_cost = gen_edge_cost == "unit" ? EdgeCostMode::kUnit : EdgeCostMode::kEuclidean;
        for (auto& s : generate_scenarios(spec)) scenarios.push_back(std::move(s));
      }
      if (scenarios.empty()) throw std::invalid_argument("no scenarios: pass --scenario or --count");
      for (auto& s : scenarios) batch_sampling.apply(s);
      std::vector<std::uint64_t> seeds;
      for (std::uint64_t i = 0; i < seed_count; ++i) seeds.push_back(seed_begin + i);
      const auto jobs = make_jobs(scenarios, parse_strategies(batch_strategies), seeds);

      Output out(batch_out);
      write_results_header(*out.stream);
      BatchOptions options;
      options.threads = threads;
      if (!trace_dir.empty()) options.trace_dir = trace_dir;
      const auto rows = run_batch(jobs, options, [&](const ResultRow& r) {
        write_result_row(*out.stream, r);
        out.stream->flush();
      });
      if (summary) print_summary(rows);
      return 0;
    }
    if (*rep) {
      std::ifstream in(replay_path);
      if (!in) throw std::runtime_error("cannot open " + replay_path);
      const Trace trace = read_trace(in);
      const ReplayReport r = replay(trace);
      std::printf("logged_cost=%.17g rescored_cost=%.17g cost_matches=%s rerun_matches=%s\n",
                  r.logged_cost, r.rescored_cost, r.cost_matches ? "yes" : "no",
                  r.rerun_matches ? "yes" : "no");
      return r.cost_matches && r.rerun_matches ? 0 : 1;
    }
    if (*check) {
      const Scenario s = load_scenario(check_path);
      std::printf("%s: %d lanes x %d nodes, %zu spots, %d available, strategy %s\n",
                  s.id.c_str(), s.layout.lane_count, s.layout.nodes_per_lane,
                  s.truth.spot_count(), s.truth.available_count(),
                  std::string(to_string(s.strategy)).c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "parkgame: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
