#include "parkgame/batch.h"

#include <atomic>
#include <chrono>
#include <charconv>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "parkgame/scenario_io.h"

namespace parkgame {

namespace {

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // Shortest text that reads back to the same double.
  char buf[40];
  const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
  return std::string(buf, end);
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::string join_nodes(const std::vector<NodeId>& nodes, char sep) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(nodes[i]);
  }
  return out;
}

std::vector<NodeId> parse_nodes(const std::string& text, char sep) {
  std::vector<NodeId> out;
  if (text.empty() || text == "-") return out;
  for (const auto& part : split(text, sep)) {
    if (!part.empty()) out.push_back(static_cast<NodeId>(std::stoi(part)));
  }
  return out;
}

}  // namespace

void write_results_header(std::ostream& out) {
  out << kResultsVersionLine << '\n' << kResultsHeader << '\n';
}

void write_result_row(std::ostream& out, const ResultRow& r) {
  out << csv_field(r.scenario) << ',' << to_string(r.strategy) << ',' << r.seed << ','
      << r.outcome << ',' << fmt_double(r.total_cost) << ',' << r.cycles << ','
      << r.parked_node << ',' << r.path_length << ',' << fmt_double(r.wall_ms) << ','
      << csv_field(r.error) << '\n';
}

std::vector<ResultRow> read_results(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kResultsVersionLine) {
    throw std::runtime_error("results file lacks the version line");
  }
  if (!std::getline(in, line) || line != kResultsHeader) {
    throw std::runtime_error("results file has an unexpected header");
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = parse_csv_line(line);
    if (f.size() != 10) throw std::runtime_error("bad results row: " + line);
    ResultRow r;
    r.scenario = f[0];
    r.strategy = parse_strategy_kind(f[1]);
    r.seed = std::stoull(f[2]);
    r.outcome = f[3];
    r.total_cost = parse_double(f[4]);
    r.cycles = std::stoi(f[5]);
    r.parked_node = static_cast<NodeId>(std::stoi(f[6]));
    r.path_length = std::stoull(f[7]);
    r.wall_ms = parse_double(f[8]);
    r.error = f[9];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<BatchJob> make_jobs(const std::vector<Scenario>& scenarios,
                                const std::vector<StrategyKind>& strategies,
                                const std::vector<std::uint64_t>& seeds) {
  std::vector<BatchJob> jobs;
  jobs.reserve(scenarios.size() * strategies.size() * seeds.size());
  for (const auto& scenario : scenarios) {
    for (auto kind : strategies) {
      for (auto seed : seeds) {
        BatchJob job{scenario, seed};
        job.scenario.strategy = kind;
        if (job.scenario.sampling) job.scenario.sampling->seed = seed;
        jobs.push_back(std::move(job));
      }
    }
  }
  return jobs;
}

std::vector<Scenario> generate_scenarios(const GeneratorSpec& spec) {
  if (spec.count < 0) throw std::invalid_argument("generator count must be nonnegative");
  std::vector<Scenario> out;
  std::uint64_t index = 0;
  for (double fill : spec.fill_rates) {
    for (int i = 0; i < spec.count; ++i, ++index) {
      Scenario s = random_scenario(spec.layout, fill, derive_seed(spec.master_seed, index));
      char id[64];
      std::snprintf(id, sizeof id, "gen-f%.2f-%05d", fill, i);
      s.id = id;
      s.weights = spec.weights;
      s.edge_cost = spec.edge_cost;
      out.push_back(std::move(s));
    }
  }
  return out;
}

ResultRow run_job(const BatchJob& job, EpisodeResult* episode) {
  ResultRow row;
  row.scenario = job.scenario.id;
  row.strategy = job.scenario.strategy;
  row.seed = job.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    EpisodeResult result = run_episode(job.scenario);
    row.outcome = std::string(to_string(result.outcome));
    row.total_cost = result.total_cost;
    row.cycles = result.cycles;
    row.parked_node = result.parked_node.value_or(kNoNode);
    row.path_length = result.path.size();
    if (episode) *episode = std::move(result);
  } catch (const std::exception& e) {
    row.outcome = "error";
    row.error = e.what();
  }
  row.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string trace_file_name(const BatchJob& job) {
  std::string id = job.scenario.id;
  for (char& c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  }
  return id + "." + std::string(to_string(job.scenario.strategy)) + "." +
         std::to_string(job.seed) + ".trace";
}

std::vector<ResultRow> run_batch(const std::vector<BatchJob>& jobs, const BatchOptions& options,
                                 const std::function<void(const ResultRow&)>& on_row) {
  if (options.trace_dir) std::filesystem::create_directories(*options.trace_dir);
  std::vector<ResultRow> rows(jobs.size());
  std::vector<char> done(jobs.size(), 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      EpisodeResult episode;
      ResultRow row = run_job(jobs[i], &episode);
      if (options.trace_dir && row.outcome != "error") {
        std::ofstream out(std::filesystem::path(*options.trace_dir) / trace_file_name(jobs[i]));
        write_trace(out, make_trace(jobs[i], episode));
      }
      {
        std::lock_guard lock(mu);
        rows[i] = std::move(row);
        done[i] = 1;
      }
      cv.notify_one();
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(options.threads,
                                                     static_cast<unsigned>(jobs.size())));
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);

  // Single writer: hand rows out in job order as the prefix completes.
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return done[i] != 0; });
    const ResultRow row = rows[i];
    lock.unlock();
    if (on_row) on_row(row);
  }
  return rows;
}

Trace make_trace(const BatchJob& job, const EpisodeResult& episode) {
  return Trace{job.scenario,       job.seed,           episode.log,
               episode.path,       episode.outcome,    episode.parked_node,
               episode.parked_side, episode.total_cost};
}

// Layout: version line, the scenario YAML with each line prefixed by
// "scenario| ", a seed line, one "cycle" line per decision, then "path" and
// "result".
void write_trace(std::ostream& out, const Trace& t) {
  out << kTraceVersionLine << '\n';
  std::istringstream yaml(serialize_scenario(t.scenario));
  for (std::string line; std::getline(yaml, line);) out << "scenario| " << line << '\n';
  out << "seed " << t.seed << '\n';
  for (const auto& c : t.cycles) {
    const auto& d = c.decision;
    out << "cycle " << c.cycle << " node=" << c.node << " n_a=" << c.n_available
        << " n_u=" << c.n_occupied << " revealed=" << c.revealed_spots
        << " decision=" << to_string(d.kind) << " park=" << d.park_node
        << " next=" << d.next_node << " dir=" << d.direction << " value=" << fmt_double(d.value)
        << " plan=" << (d.planned_action.empty() ? "-" : join_nodes(d.planned_action, ','))
        << '\n';
  }
  out << "path " << join_nodes(t.path, ' ') << '\n';
  out << "result " << to_string(t.outcome)
      << " node=" << t.parked_node.value_or(kNoNode)
      << " side=" << (t.parked_side ? std::string(to_string(*t.parked_side)) : "-")
      << " total_cost=" << fmt_double(t.total_cost) << '\n';
}

namespace {

Decision::Kind parse_kind(const std::string& s) {
  if (s == "park") return Decision::Kind::kPark;
  if (s == "proceed") return Decision::Kind::kProceed;
  if (s == "no_spot") return Decision::Kind::kNoSpot;
  throw std::runtime_error("unknown decision '" + s + "'");
}

// "key=value" tokens after the leading word(s).
std::string field(const std::vector<std::string>& tokens, const std::string& key) {
  for (const auto& tok : tokens) {
    if (tok.size() > key.size() && tok.compare(0, key.size(), key) == 0 &&
        tok[key.size()] == '=') {
      return tok.substr(key.size() + 1);
    }
  }
  throw std::runtime_error("trace line lacks '" + key + "'");
}

}  // namespace

Trace read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceVersionLine) {
    throw std::runtime_error("trace lacks the version line");
  }
  Trace t;
  std::string yaml;
  bool have_result = false;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      if (line.rfind("scenario| ", 0) == 0) {
        yaml += line.substr(10) + '\n';
        continue;
      }
      const auto tokens = split(line, ' ');
      const std::string& head = tokens.front();
      if (head == "seed") {
        t.seed = std::stoull(tokens.at(1));
      } else if (head == "cycle") {
        CycleRecord c;
        c.cycle = std::stoi(tokens.at(1));
        c.node = std::stoi(field(tokens, "node"));
        c.n_available = std::stoi(field(tokens, "n_a"));
        c.n_occupied = std::stoi(field(tokens, "n_u"));
        c.revealed_spots = std::stoi(field(tokens, "revealed"));
        c.decision.kind = parse_kind(field(tokens, "decision"));
        c.decision.park_node = std::stoi(field(tokens, "park"));
        c.decision.next_node = std::stoi(field(tokens, "next"));
        c.decision.direction = std::stoi(field(tokens, "dir"));
        c.decision.value = parse_double(field(tokens, "value"));
        c.decision.planned_action = parse_nodes(field(tokens, "plan"), ',');
        t.cycles.push_back(std::move(c));
      } else if (head == "path") {
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          if (!tokens[i].empty()) t.path.push_back(std::stoi(tokens[i]));
        }
      } else if (head == "result") {
        const std::string& outcome = tokens.at(1);
        if (outcome == "parked") {
          t.outcome = Outcome::kParked;
        } else if (outcome == "no_spot_failure") {
          t.outcome = Outcome::kNoSpotFailure;
        } else {
          throw std::runtime_error("unknown outcome '" + outcome + "'");
        }
        const NodeId node = std::stoi(field(tokens, "node"));
        if (node != kNoNode) t.parked_node = node;
        const std::string side = field(tokens, "side");
        if (side == "left") t.parked_side = Side::kLeft;
        if (side == "right") t.parked_side = Side::kRight;
        t.total_cost = parse_double(field(tokens, "total_cost"));
        have_result = true;
      } else {
        throw std::runtime_error("unknown record '" + head + "'");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_result) throw std::runtime_error("trace has no result line");
  t.scenario = parse_scenario(yaml);
  return t;
}

ReplayReport replay(const Trace& t) {
  ReplayReport report;
  report.logged_cost = t.total_cost;
  if (t.outcome == Outcome::kParked) {
    if (!t.parked_node) throw std::runtime_error("parked trace without a node");
    const ParkingLotGraph graph(t.scenario.layout);
    report.rescored_cost = score(graph, t.path, *t.parked_node, t.scenario);
    report.cost_matches = std::abs(report.rescored_cost - report.logged_cost) <= kCostTolerance;
  } else {
    report.cost_matches = std::isinf(t.total_cost);
  }
  const EpisodeResult rerun = run_episode(t.scenario);
  bool same = rerun.path == t.path && rerun.outcome == t.outcome &&
              rerun.log.size() == t.cycles.size();
  for (std::size_t i = 0; same && i < t.cycles.size(); ++i) {
    const auto& a = rerun.log[i];
    const auto& b = t.cycles[i];
    same = a.cycle == b.cycle && a.node == b.node && a.n_available == b.n_available &&
           a.n_occupied == b.n_occupied && a.revealed_spots == b.revealed_spots &&
           a.decision == b.decision;
  }
  report.rerun_matches = same;
  return report;
}

}  // namespace parkgame
