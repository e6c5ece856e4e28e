/// @file randomgen.hpp
/// @brief Seeded generators for random networks, block-sequential schedules
/// and family specs. Shared by the randomized test suites and `gen --random`.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "ban/families.hpp"
#include "ban/network.hpp"
#include "ban/schedule.hpp"

namespace ban {

using Rng = std::mt19937_64;

namespace detail {

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline GateId random_gate(Rng& rng, GatePool& pool, int n, int depth) {
  int choice = depth <= 0 ? 0 : uniform_int(rng, 0, 9);
  if (choice < 3) {  // leaf
    if (uniform_int(rng, 0, 9) == 0) return pool.constant(uniform_int(rng, 0, 1));
    return pool.input(static_cast<std::uint32_t>(uniform_int(rng, 0, n - 1)));
  }
  if (choice < 5) return pool.gate_not(random_gate(rng, pool, n, depth - 1));
  std::vector<GateId> children;
  int arity = uniform_int(rng, 2, 3);
  for (int i = 0; i < arity; ++i)
    children.push_back(random_gate(rng, pool, n, depth - 1));
  return choice < 7 ? pool.gate_and(std::move(children))
                    : pool.gate_or(std::move(children));
}

}  // namespace detail

/// A random network of exactly n automata with circuit depth <= max_depth.
inline AutomataNetwork random_network(Rng& rng, int n, int max_depth = 4) {
  AutomataNetwork net;
  for (int i = 0; i < n; ++i) net.names.push_back(auto_name(i));
  for (int i = 0; i < n; ++i)
    net.outputs.push_back(detail::random_gate(
        rng, net.pool, n, detail::uniform_int(rng, 1, max_depth)));
  net.validate();
  return net;
}

/// A uniform-ish random partition of {0..n-1} into an ordered block sequence.
inline UpdateSchedule random_block_sequential_schedule(Rng& rng, int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);

  UpdateSchedule schedule;
  schedule.blocks.push_back({order[0]});
  for (int i = 1; i < n; ++i) {
    if (detail::uniform_int(rng, 0, 1) == 0)
      schedule.blocks.emplace_back();
    schedule.blocks.back().push_back(order[static_cast<std::size_t>(i)]);
  }
  return schedule;
}

inline Sign random_sign(Rng& rng) {
  return detail::uniform_int(rng, 0, 1) == 0 ? Sign::Positive : Sign::Negative;
}

/// A canonical, non-degenerate TC spec with k <= max_cycles cycles, cycle
/// lengths <= max_length and tangent <= max_tangent.
inline TCSpec random_tc_spec(Rng& rng, int max_cycles = 3, int max_length = 6,
                             int max_tangent = 2) {
  for (;;) {
    int k = detail::uniform_int(rng, 1, max_cycles);
    int t = detail::uniform_int(rng, 0, max_tangent);
    if (t + 1 > max_length) continue;
    TCSpec spec;
    spec.tangent_length = t;
    for (int i = 0; i < k; ++i) {
      int len = detail::uniform_int(rng, t + 1, max_length);
      Sign sign = random_sign(rng);
      spec.cycle_lengths.push_back(len);
      spec.cycle_signs.push_back(sign);
      spec.edge_sign_layout.push_back(canonical_edge_signs(len, sign));
    }
    if (spec.degenerate()) continue;
    return canonicalize(spec);
  }
}

inline DCSpec random_dc_spec(Rng& rng, int max_size = 5) {
  for (;;) {
    DCSpec spec{random_sign(rng), random_sign(rng),
                detail::uniform_int(rng, 1, max_size),
                detail::uniform_int(rng, 1, max_size)};
    if (!spec.degenerate()) return spec;
  }
}

}  // namespace ban
