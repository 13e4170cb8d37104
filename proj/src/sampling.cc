#include "parkgame/sampling.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace parkgame {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t cap, Rng& rng) {
  if (cap == 0) throw std::invalid_argument("sampling cap must be at least 1");
  std::vector<std::size_t> all(population);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (cap >= population) return all;
  std::vector<std::size_t> out;
  out.reserve(cap);
  std::sample(all.begin(), all.end(), std::back_inserter(out), cap, rng);
  return out;
}

std::vector<VehicleAction> sample_actions(std::span<const VehicleAction> actions,
                                          std::size_t cap, Rng& rng) {
  std::vector<VehicleAction> out;
  for (std::size_t i : sample_indices(actions.size(), cap, rng)) out.push_back(actions[i]);
  return out;
}

std::vector<std::size_t> sample_grouped(std::span<const DirectionGroup> groups,
                                        std::size_t cap, Rng& rng) {
  if (cap == 0) throw std::invalid_argument("sampling cap must be at least 1");
  std::size_t total = 0;
  for (const auto& g : groups) total += g.members.size();
  std::vector<std::size_t> out;
  if (cap >= total) {
    for (const auto& g : groups) out.insert(out.end(), g.members.begin(), g.members.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  // Water-fill: smallest groups first, each taking at most an even share of
  // what is left; always at least one per group.
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return groups[a].members.size() < groups[b].members.size();
  });
  std::vector<std::size_t> quota(groups.size(), 0);
  std::size_t left = cap;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t share = std::max<std::size_t>(1, left / (order.size() - k));
    const std::size_t take = std::min(share, groups[order[k]].members.size());
    quota[order[k]] = take;
    left = left > take ? left - take : 0;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i : sample_indices(groups[g].members.size(), quota[g], rng)) {
      out.push_back(groups[g].members[i]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LotActionSet sample_lot_actions(int n_available, int n_occupied,
                                std::vector<NodeId> unvisited_nodes, std::size_t cap,
                                Rng& rng) {
  if (cap == 0) throw std::invalid_argument("sampling cap must be at least 1");
  const auto counts = feasible_x1_counts(n_available, n_occupied);
  const double total = lot_action_count(n_available, n_occupied);
  const double c = static_cast<double>(cap);
  if (total <= c) {
    return parking_lot_actions(counts, n_available, n_occupied, std::move(unvisited_nodes));
  }
  if (total <= 4.0 * c && total <= 2e6) {
    const LotActionSet all =
        parking_lot_actions(counts, n_available, n_occupied, unvisited_nodes);
    LotActionSet out(std::move(unvisited_nodes));
    out.reserve(cap);
    for (std::size_t i : sample_indices(all.size(), cap, rng)) out.push_back_row(all.row(i));
    return out;
  }

  const int nodes = static_cast<int>(unvisited_nodes.size());
  std::vector<double> weights;
  for (int m : counts) weights.push_back(binomial(nodes, m));
  std::discrete_distribution<std::size_t> pick_count(weights.begin(), weights.end());

  LotActionSet out(std::move(unvisited_nodes));
  out.reserve(cap);
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::uint64_t> row(out.words_per_action());
  while (out.size() < cap) {
    const int m = counts[pick_count(rng)];
    std::fill(row.begin(), row.end(), 0);
    // Floyd's algorithm for a uniform m-subset of {0..nodes-1}.
    for (int j = nodes - m; j < nodes; ++j) {
      std::uniform_int_distribution<int> d(0, j);
      int t = d(rng);
      const auto bit = [&](int i) {
        return (row[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1u;
      };
      if (bit(t)) t = j;
      row[static_cast<std::size_t>(t) / 64] |= std::uint64_t{1} << (t % 64);
    }
    if (seen.insert(row).second) out.push_back_row(row);
  }
  return out;
}

}  // namespace parkgame
