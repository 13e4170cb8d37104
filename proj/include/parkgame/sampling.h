#ifndef PARKGAME_SAMPLING_H_
#define PARKGAME_SAMPLING_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "parkgame/actions.h"

namespace parkgame {

using Rng = std::mt19937_64;

// Caps on the sampled action spaces used in place of the exact ones.
struct SamplingConfig {
  std::size_t max_vehicle_actions = 1000;
  std::size_t max_lot_actions = 1000;
  std::uint64_t seed = 0;

  bool operator==(const SamplingConfig&) const = default;
};

// splitmix64 finalizer over (master, index); used for per-episode and
// per-cycle random streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Uniform subset of {0..population-1} of size min(cap, population), returned
// in ascending order. Throws std::invalid_argument when cap is zero.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t cap, Rng& rng);

// Uniform subset of the actions without replacement, generation order kept.
std::vector<VehicleAction> sample_actions(std::span<const VehicleAction> actions,
                                          std::size_t cap, Rng& rng);

// Like sample_actions but every direction group keeps at least one member; the
// cap is spread evenly over the groups and unused share is handed on. Returns
// sorted indices into the action list.
std::vector<std::size_t> sample_grouped(std::span<const DirectionGroup> groups,
                                        std::size_t cap, Rng& rng);

// Uniform subset of A_p of size min(cap, |A_p|) drawn without materializing
// A_p when it is large: m is drawn with probability proportional to C(N, m),
// then a uniform m-subset of the nodes. When cap >= |A_p| the exact set is
// returned in generation order.
LotActionSet sample_lot_actions(int n_available, int n_occupied,
                                std::vector<NodeId> unvisited_nodes, std::size_t cap,
                                Rng& rng);

}  // namespace parkgame

#endif  // PARKGAME_SAMPLING_H_
