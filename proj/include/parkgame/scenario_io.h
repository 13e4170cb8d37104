#ifndef PARKGAME_SCENARIO_IO_H_
#define PARKGAME_SCENARIO_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "parkgame/sim.h"

namespace parkgame {

// Malformed scenario file. `line` is 1-based, 0 when unknown.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& message, int line);
  int line() const { return line_; }

 private:
  int line_;
};

// YAML scenario. Unknown keys are rejected. Example:
//
//   id: fig1
//   layout: {lanes: 3, nodes_per_lane: 6, pitch: 1.0, entrance: left,
//            door_x: 0.0, door_y: 3.0}
//   truth: {available: "110010 ..."}     # or {fill_rate: 0.7, seed: 3}
//   weights: {omega_r: 1, omega_t: 10}
//   edge_cost_mode: unit                 # or euclidean
//   strategy: guarded                    # secure | guarded | prudent
//   sampling: {max_vehicle_actions: 1000, max_lot_actions: 1000, seed: 0}
//
// The available bitmap lists spots in order 2*node + side (left first);
// whitespace is ignored.
Scenario parse_scenario(const std::string& yaml_text);
Scenario load_scenario(const std::filesystem::path& path);

// Always writes the explicit bitmap form, so parse(serialize(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

std::string bitmap_string(const GroundTruth& truth);
GroundTruth parse_bitmap(std::string_view text);

}  // namespace parkgame

#endif  // PARKGAME_SCENARIO_IO_H_
