#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parkgame/batch.h"
#include "parkgame/scenario_io.h"

namespace py = pybind11;
using namespace parkgame;

namespace {

EntranceSide side_from(const std::string& s) {
  if (s == "left") return EntranceSide::kLeft;
  if (s == "right") return EntranceSide::kRight;
  throw py::value_error("entrance must be 'left' or 'right'");
}

EdgeCostMode mode_from(const std::string& s) {
  if (s == "unit") return EdgeCostMode::kUnit;
  if (s == "euclidean") return EdgeCostMode::kEuclidean;
  throw py::value_error("edge cost mode must be 'unit' or 'euclidean'");
}

py::object node_or_none(NodeId id) {
  if (id == kNoNode) return py::none();
  return py::int_(id);
}

// Decision as a plain dict; easier to inspect from Python than a class.
py::dict decision_dict(const Decision& d) {
  py::dict out;
  out["kind"] = std::string(to_string(d.kind));
  out["park_node"] = node_or_none(d.park_node);
  out["next_node"] = node_or_none(d.next_node);
  out["direction"] = node_or_none(d.direction);
  out["planned_action"] = d.planned_action;
  out["value"] = d.value;
  return out;
}

LotActionSet arrangement_set(const std::vector<NodeId>& nodes,
                             const std::vector<std::vector<std::uint8_t>>& rows) {
  LotActionSet set(nodes);
  for (const auto& r : rows) {
    if (r.size() != nodes.size()) throw py::value_error("arrangement length != node count");
    set.push_back(r);
  }
  return set;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Game-theoretic parking-spot search: graphs, action spaces, strategies, episodes.";

  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);

  py::class_<LotLayout>(m, "LotLayout")
      .def(py::init([](int lanes, int nodes_per_lane, double pitch, const std::string& entrance,
                       std::optional<std::pair<double, double>> door) {
             LotLayout l;
             l.lane_count = lanes;
             l.nodes_per_lane = nodes_per_lane;
             l.pitch = pitch;
             l.entrance = side_from(entrance);
             l.door = door ? Point{door->first, door->second} : default_door(l);
             return l;
           }),
           py::arg("lanes"), py::arg("nodes_per_lane"), py::arg("pitch") = 1.0,
           py::arg("entrance") = "left", py::arg("door") = py::none())
      .def_readwrite("lanes", &LotLayout::lane_count)
      .def_readwrite("nodes_per_lane", &LotLayout::nodes_per_lane)
      .def_readwrite("pitch", &LotLayout::pitch)
      .def_property_readonly("entrance", [](const LotLayout& l) {
        return l.entrance == EntranceSide::kLeft ? "left" : "right";
      })
      .def_property("door", [](const LotLayout& l) { return std::make_pair(l.door.x, l.door.y); },
                    [](LotLayout& l, std::pair<double, double> d) { l.door = {d.first, d.second}; });

  py::class_<ParkingLotGraph>(m, "Graph")
      .def(py::init([](const LotLayout& l) { return build_lot(l); }), py::arg("layout"))
      .def_property_readonly("node_count", &ParkingLotGraph::node_count)
      .def_property_readonly("spot_node_count", &ParkingLotGraph::spot_node_count)
      .def_property_readonly("spot_count", &ParkingLotGraph::spot_count)
      .def_property_readonly("entrance", &ParkingLotGraph::entrance)
      .def("spot_bearing", &ParkingLotGraph::spot_bearing)
      .def("position", [](const ParkingLotGraph& g, NodeId id) {
        const Point p = g.node(id).position;
        return std::make_pair(p.x, p.y);
      })
      .def("neighbors", [](const ParkingLotGraph& g, NodeId id) {
        const auto n = g.neighbors(id);
        return std::vector<NodeId>(n.begin(), n.end());
      })
      .def("spot_node", &ParkingLotGraph::spot_node, py::arg("lane"), py::arg("slot"))
      .def("connector", &ParkingLotGraph::connector, py::arg("lane"), py::arg("far_side"))
      .def("lane_nodes", &ParkingLotGraph::lane_nodes)
      .def("next_options", [](const ParkingLotGraph& g, NodeId cur, NodeId from) {
        return next_options(g, cur, from);
      }, py::arg("current"), py::arg("came_from") = kNoNode);

  py::class_<Knowledge>(m, "Knowledge")
      .def(py::init([](const ParkingLotGraph& g, int avail, int occ) {
             return init_knowledge(g, avail, occ);
           }),
           py::arg("graph"), py::arg("available"), py::arg("occupied"))
      .def_property_readonly("n_available", &Knowledge::n_available)
      .def_property_readonly("n_occupied", &Knowledge::n_occupied)
      .def_property_readonly("revealed_spot_count", &Knowledge::revealed_spot_count)
      .def_property_readonly("total_spots", &Knowledge::total_spots)
      .def_property_readonly("cycle", &Knowledge::cycle)
      .def_property_readonly("lanes_entered", &Knowledge::lanes_entered)
      .def("visited", &Knowledge::visited)
      .def("conserved", &Knowledge::conserved)
      .def("unvisited_spot_nodes", &Knowledge::unvisited_spot_nodes)
      .def("observe", [](const Knowledge& k, const ParkingLotGraph& g, NodeId node, bool left,
                         bool right) { return k.observe(g, SpotObservation{node, left, right}); },
           py::arg("graph"), py::arg("node"), py::arg("left_available"),
           py::arg("right_available"))
      .def("arrive", &Knowledge::arrive)
      .def("advance_cycle", &Knowledge::advance_cycle);

  py::class_<CostModel>(m, "CostModel")
      .def(py::init([](double omega_r, double omega_t, const std::string& edges,
                       std::pair<double, double> door) {
             CostModel c{{omega_r, omega_t}, mode_from(edges), {door.first, door.second}};
             validate(c.weights);
             return c;
           }),
           py::arg("omega_r"), py::arg("omega_t"), py::arg("edge_cost"), py::arg("door"));

  m.def("feasible_x1_counts", &feasible_x1_counts, py::arg("n_available"), py::arg("n_occupied"));
  m.def("lot_action_count", &lot_action_count, py::arg("n_available"), py::arg("n_occupied"));
  m.def("parking_lot_actions",
        [](int n_a, int n_u, std::vector<NodeId> nodes) {
          const auto counts = feasible_x1_counts(n_a, n_u);
          const LotActionSet set = parking_lot_actions(counts, n_a, n_u, std::move(nodes));
          std::vector<std::vector<std::uint8_t>> out;
          out.reserve(set.size());
          for (std::size_t i = 0; i < set.size(); ++i) out.push_back(set.at(i).states);
          return out;
        },
        py::arg("n_available"), py::arg("n_occupied"), py::arg("nodes"),
        "Every arrangement as a list of 0/1 states aligned with `nodes`.");
  m.def("vehicle_traversals", &vehicle_traversals, py::arg("graph"), py::arg("current"),
        py::arg("lanes_done"), py::arg("came_from") = kNoNode);
  m.def("best_response_cost",
        [](const ParkingLotGraph& g, const Knowledge& k, const std::vector<NodeId>& traversal,
           const std::vector<NodeId>& nodes, const std::vector<std::uint8_t>& states,
           const CostModel& model) {
          const BestResponse r = best_response_cost(g, k, traversal, LotAction{nodes, states}, model);
          return std::make_pair(r.cost, r.target ? py::object(py::int_(*r.target)) : py::none());
        },
        py::arg("graph"), py::arg("knowledge"), py::arg("traversal"), py::arg("nodes"),
        py::arg("states"), py::arg("model"), "Returns (cost, target node or None).");
  m.def("secure_value",
        [](const ParkingLotGraph& g, const Knowledge& k,
           const std::vector<VehicleAction>& traversals, const std::vector<NodeId>& nodes,
           const std::vector<std::vector<std::uint8_t>>& arrangements, const CostModel& model) {
          const auto r = secure_value(g, k, traversals, arrangement_set(nodes, arrangements), model);
          return py::make_tuple(r.value, r.action, r.worst_arrangement);
        },
        py::arg("graph"), py::arg("knowledge"), py::arg("traversals"), py::arg("nodes"),
        py::arg("arrangements"), py::arg("model"),
        "min over traversals of max over arrangements; returns (value, action, worst).");
  m.def("secure_guarded_values",
        [](const ParkingLotGraph& g, const Knowledge& k,
           const std::vector<VehicleAction>& traversals, const std::vector<NodeId>& nodes,
           const std::vector<std::vector<std::uint8_t>>& arrangements, const CostModel& model) {
          const auto r =
              secure_guarded_values(g, k, traversals, arrangement_set(nodes, arrangements), model);
          return std::make_pair(r.secure, r.guarded);
        },
        py::arg("graph"), py::arg("knowledge"), py::arg("traversals"), py::arg("nodes"),
        py::arg("arrangements"), py::arg("model"), "Returns (secure, guarded) values.");
  m.def("decide",
        [](const std::string& strategy, const ParkingLotGraph& g, const Knowledge& k,
           NodeId current, NodeId came_from, const CostModel& model,
           std::optional<std::pair<std::size_t, std::size_t>> caps, std::uint64_t seed) {
          std::optional<SamplingConfig> sampling;
          if (caps) sampling = SamplingConfig{caps->first, caps->second, seed};
          auto s = make_strategy(parse_strategy_kind(strategy), g, model, sampling);
          return decision_dict(s->decide(PlanningState{g, k, current, came_from, model}));
        },
        py::arg("strategy"), py::arg("graph"), py::arg("knowledge"), py::arg("current"),
        py::arg("came_from"), py::arg("model"), py::arg("caps") = py::none(),
        py::arg("seed") = 0,
        "One planning cycle from a fresh strategy. `caps` is (max_vehicle, max_lot).");

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("id", &Scenario::id)
      .def_readwrite("layout", &Scenario::layout)
      .def_property("strategy", [](const Scenario& s) { return std::string(to_string(s.strategy)); },
                    [](Scenario& s, const std::string& v) { s.strategy = parse_strategy_kind(v); })
      .def_property("edge_cost",
                    [](const Scenario& s) {
                      return s.edge_cost == EdgeCostMode::kUnit ? "unit" : "euclidean";
                    },
                    [](Scenario& s, const std::string& v) { s.edge_cost = mode_from(v); })
      .def_property("weights",
                    [](const Scenario& s) {
                      return std::make_pair(s.weights.omega_r, s.weights.omega_t);
                    },
                    [](Scenario& s, std::pair<double, double> w) {
                      s.weights = {w.first, w.second};
                    })
      .def_property("sampling",
                    [](const Scenario& s) -> py::object {
                      if (!s.sampling) return py::none();
                      return py::make_tuple(s.sampling->max_vehicle_actions,
                                            s.sampling->max_lot_actions, s.sampling->seed);
                    },
                    [](Scenario& s, std::optional<std::tuple<std::size_t, std::size_t,
                                                             std::uint64_t>> v) {
                      if (!v) {
                        s.sampling.reset();
                      } else {
                        s.sampling = SamplingConfig{std::get<0>(*v), std::get<1>(*v),
                                                    std::get<2>(*v)};
                      }
                    })
      .def_property_readonly("available_bitmap",
                             [](const Scenario& s) { return bitmap_string(s.truth); })
      .def_property_readonly("available_count",
                             [](const Scenario& s) { return s.truth.available_count(); })
      .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

  m.def("parse_scenario", &parse_scenario, py::arg("yaml_text"));
  m.def("load_scenario", [](const std::string& p) { return load_scenario(p); }, py::arg("path"));
  m.def("serialize_scenario", &serialize_scenario, py::arg("scenario"));
  m.def("random_scenario", &random_scenario, py::arg("layout"), py::arg("fill_rate"),
        py::arg("seed"));

  py::class_<EpisodeResult>(m, "EpisodeResult")
      .def_readonly("path", &EpisodeResult::path)
      .def_readonly("total_cost", &EpisodeResult::total_cost)
      .def_readonly("cycles", &EpisodeResult::cycles)
      .def_property_readonly("outcome",
                             [](const EpisodeResult& r) { return std::string(to_string(r.outcome)); })
      .def_property_readonly("parked_node",
                             [](const EpisodeResult& r) {
                               return node_or_none(r.parked_node.value_or(kNoNode));
                             })
      .def_property_readonly("parked_side",
                             [](const EpisodeResult& r) -> py::object {
                               if (!r.parked_side) return py::none();
                               return py::str(std::string(to_string(*r.parked_side)));
                             })
      .def_property_readonly("decisions", [](const EpisodeResult& r) {
        py::list out;
        for (const auto& c : r.log) {
          py::dict d = decision_dict(c.decision);
          d["cycle"] = c.cycle;
          d["node"] = c.node;
          d["n_available"] = c.n_available;
          d["n_occupied"] = c.n_occupied;
          d["revealed_spots"] = c.revealed_spots;
          out.append(d);
        }
        return out;
      });

  m.def("run_episode", &run_episode, py::arg("scenario"),
        py::call_guard<py::gil_scoped_release>());

  m.def("run_batch",
        [](const std::vector<Scenario>& scenarios, const std::vector<std::string>& strategies,
           const std::vector<std::uint64_t>& seeds, unsigned threads) {
          std::vector<StrategyKind> kinds;
          for (const auto& s : strategies) kinds.push_back(parse_strategy_kind(s));
          const auto jobs = make_jobs(scenarios, kinds, seeds);
          std::vector<ResultRow> rows;
          {
            py::gil_scoped_release release;
            rows = run_batch(jobs, BatchOptions{threads, std::nullopt});
          }
          py::list out;
          for (const auto& r : rows) {
            py::dict d;
            d["scenario"] = r.scenario;
            d["strategy"] = std::string(to_string(r.strategy));
            d["seed"] = r.seed;
            d["outcome"] = r.outcome;
            d["total_cost"] = r.total_cost;
            d["cycles"] = r.cycles;
            d["parked_node"] = node_or_none(r.parked_node);
            d["path_length"] = r.path_length;
            d["wall_ms"] = r.wall_ms;
            d["error"] = r.error;
            out.append(d);
          }
          return out;
        },
        py::arg("scenarios"), py::arg("strategies"), py::arg("seeds"), py::arg("threads") = 1,
        "Rows in (scenario, strategy, seed) order.");
}
