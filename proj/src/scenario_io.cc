#include "parkgame/scenario_io.h"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace parkgame {

ScenarioError::ScenarioError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

void check_keys(const YAML::Node& map, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!map.IsMap()) throw ScenarioError(where + " must be a mapping", line_of(map));
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) {
      throw ScenarioError("unknown key '" + key + "' in " + where, line_of(kv.first));
    }
  }
}

template <typename T>
T get(const YAML::Node& map, const std::string& key, const std::string& where) {
  const YAML::Node value = map[key];
  if (!value) throw ScenarioError("missing '" + key + "' in " + where, line_of(map));
  try {
    return value.as<T>();
  } catch (const YAML::Exception&) {
    throw ScenarioError("bad value for '" + key + "' in " + where, line_of(value));
  }
}

template <typename T>
T get_or(const YAML::Node& map, const std::string& key, T fallback, const std::string& where) {
  return map[key] ? get<T>(map, key, where) : fallback;
}

EntranceSide parse_side(const std::string& text, int line) {
  if (text == "left") return EntranceSide::kLeft;
  if (text == "right") return EntranceSide::kRight;
  throw ScenarioError("entrance must be left or right, got '" + text + "'", line);
}

EdgeCostMode parse_mode(const std::string& text, int line) {
  if (text == "unit") return EdgeCostMode::kUnit;
  if (text == "euclidean") return EdgeCostMode::kEuclidean;
  throw ScenarioError("edge_cost_mode must be unit or euclidean, got '" + text + "'", line);
}

}  // namespace

std::string bitmap_string(const GroundTruth& truth) {
  std::string out;
  const auto& bits = truth.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i > 0 && i % 2 == 0) out += ' ';
    out += bits[i] ? '1' : '0';
  }
  return out;
}

GroundTruth parse_bitmap(std::string_view text) {
  std::vector<bool> bits;
  for (char c : text) {
    if (c == '1' || c == '0') {
      bits.push_back(c == '1');
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument(std::string("bitmap may only contain 0, 1 and spaces, got '") +
                                  c + "'");
    }
  }
  return GroundTruth(std::move(bits));
}

Scenario parse_scenario(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
  if (!root || root.IsNull()) throw ScenarioError("empty scenario", 0);
  check_keys(root,
             {"id", "layout", "truth", "weights", "edge_cost_mode", "strategy", "sampling"},
             "scenario");

  Scenario s;
  s.id = get_or<std::string>(root, "id", s.id, "scenario");

  const YAML::Node layout = root["layout"];
  if (!layout) throw ScenarioError("missing 'layout'", line_of(root));
  check_keys(layout, {"lanes", "nodes_per_lane", "pitch", "entrance", "door_x", "door_y"},
             "layout");
  s.layout.lane_count = get<int>(layout, "lanes", "layout");
  s.layout.nodes_per_lane = get<int>(layout, "nodes_per_lane", "layout");
  s.layout.pitch = get_or<double>(layout, "pitch", 1.0, "layout");
  if (layout["entrance"]) {
    s.layout.entrance =
        parse_side(get<std::string>(layout, "entrance", "layout"), line_of(layout["entrance"]));
  }
  if (s.layout.lane_count < 1 || s.layout.nodes_per_lane < 1 || !(s.layout.pitch > 0)) {
    throw ScenarioError("layout needs lanes >= 1, nodes_per_lane >= 1 and pitch > 0",
                        line_of(layout));
  }
  const Point door = default_door(s.layout);
  s.layout.door = {get_or<double>(layout, "door_x", door.x, "layout"),
                   get_or<double>(layout, "door_y", door.y, "layout")};

  const YAML::Node truth = root["truth"];
  if (!truth) throw ScenarioError("missing 'truth'", line_of(root));
  check_keys(truth, {"available", "fill_rate", "seed"}, "truth");
  if (truth["available"]) {
    if (truth["fill_rate"] || truth["seed"]) {
      throw ScenarioError("truth takes either 'available' or 'fill_rate'/'seed', not both",
                          line_of(truth));
    }
    try {
      s.truth = parse_bitmap(get<std::string>(truth, "available", "truth"));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what(), line_of(truth["available"]));
    }
    const std::size_t expected =
        2 * static_cast<std::size_t>(s.layout.lane_count) * s.layout.nodes_per_lane;
    if (s.truth.spot_count() != expected) {
      throw ScenarioError("available bitmap has " + std::to_string(s.truth.spot_count()) +
                              " entries, expected " + std::to_string(expected),
                          line_of(truth["available"]));
    }
  } else {
    const double fill = get<double>(truth, "fill_rate", "truth");
    const auto seed = get_or<std::uint64_t>(truth, "seed", 0, "truth");
    try {
      s.truth = random_scenario(s.layout, fill, seed).truth;
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what(), line_of(truth["fill_rate"]));
    }
  }

  if (const YAML::Node w = root["weights"]) {
    check_keys(w, {"omega_r", "omega_t"}, "weights");
    s.weights.omega_r = get_or<double>(w, "omega_r", s.weights.omega_r, "weights");
    s.weights.omega_t = get_or<double>(w, "omega_t", s.weights.omega_t, "weights");
  }
  if (root["edge_cost_mode"]) {
    s.edge_cost = parse_mode(get<std::string>(root, "edge_cost_mode", "scenario"),
                             line_of(root["edge_cost_mode"]));
  }
  if (root["strategy"]) {
    try {
      s.strategy = parse_strategy_kind(get<std::string>(root, "strategy", "scenario"));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what(), line_of(root["strategy"]));
    }
  }
  if (const YAML::Node smp = root["sampling"]) {
    check_keys(smp, {"max_vehicle_actions", "max_lot_actions", "seed"}, "sampling");
    SamplingConfig cfg;
    cfg.max_vehicle_actions =
        get_or<std::size_t>(smp, "max_vehicle_actions", cfg.max_vehicle_actions, "sampling");
    cfg.max_lot_actions =
        get_or<std::size_t>(smp, "max_lot_actions", cfg.max_lot_actions, "sampling");
    cfg.seed = get_or<std::uint64_t>(smp, "seed", cfg.seed, "sampling");
    s.sampling = cfg;
  }

  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what(), 0);
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.string() + ": " + e.what(), e.line());
  }
}

std::string serialize_scenario(const Scenario& s) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << s.id;
  out << YAML::Key << "layout" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "lanes" << YAML::Value << s.layout.lane_count;
  out << YAML::Key << "nodes_per_lane" << YAML::Value << s.layout.nodes_per_lane;
  out << YAML::Key << "pitch" << YAML::Value << s.layout.pitch;
  out << YAML::Key << "entrance" << YAML::Value
      << (s.layout.entrance == EntranceSide::kLeft ? "left" : "right");
  out << YAML::Key << "door_x" << YAML::Value << s.layout.door.x;
  out << YAML::Key << "door_y" << YAML::Value << s.layout.door.y;
  out << YAML::EndMap;
  out << YAML::Key << "truth" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "available" << YAML::Value << YAML::DoubleQuoted << bitmap_string(s.truth);
  out << YAML::EndMap;
  out << YAML::Key << "weights" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "omega_r" << YAML::Value << s.weights.omega_r;
  out << YAML::Key << "omega_t" << YAML::Value << s.weights.omega_t;
  out << YAML::EndMap;
  out << YAML::Key << "edge_cost_mode" << YAML::Value
      << (s.edge_cost == EdgeCostMode::kUnit ? "unit" : "euclidean");
  out << YAML::Key << "strategy" << YAML::Value << std::string(to_string(s.strategy));
  if (s.sampling) {
    out << YAML::Key << "sampling" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "max_vehicle_actions" << YAML::Value << s.sampling->max_vehicle_actions;
    out << YAML::Key << "max_lot_actions" << YAML::Value << s.sampling->max_lot_actions;
    out << YAML::Key << "seed" << YAML::Value << s.sampling->seed;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace parkgame
