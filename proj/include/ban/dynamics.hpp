/// @file dynamics.hpp
/// @brief Exhaustive dynamics over {0,1}^n: successor tables, limit cycles,
/// signatures. Everything here is exact; past the enumeration cap the
/// engine refuses instead of sampling.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "ban/network.hpp"
#include "ban/schedule.hpp"

namespace ban {

constexpr int kDefaultEnumerationCap = 20;

/// The functional digraph of F_Delta on all 2^n configurations.
struct DynamicsGraph {
  int n = 0;
  std::vector<Config> successor;  // indexed by configuration

  std::size_t config_count() const { return successor.size(); }
};

inline DynamicsGraph full_dynamics(const AutomataNetwork& net,
                                   const UpdateSchedule& schedule,
                                   int enumeration_cap = kDefaultEnumerationCap,
                                   int jobs = 1) {
  int n = net.size();
  if (n > enumeration_cap)
    throw CapExceededError("network exceeds the enumeration cap");

  DynamicsGraph dyn;
  dyn.n = n;
  dyn.successor.assign(std::size_t{1} << n, 0);
  // The empty network has one configuration, fixed under any schedule.
  if (n == 0) return dyn;
  schedule.validate(n);

  auto sweep = [&](Config first, Config last) {
    Evaluator ev(net);
    for (Config x = first; x < last; ++x) {
      Config cur = x;
      for (const auto& block : schedule.blocks) cur = ev.apply_block(block, cur);
      dyn.successor[x] = cur;
    }
  };

  Config total = Config{1} << n;
  if (jobs <= 1 || total < 1024) {
    sweep(0, total);
  } else {
    std::size_t workers = std::min<std::size_t>(jobs, 64);
    std::vector<std::thread> pool;
    Config chunk = total / workers + 1;
    for (std::size_t w = 0; w < workers; ++w) {
      Config first = w * chunk;
      Config last = std::min(total, first + chunk);
      if (first >= last) break;
      pool.emplace_back(sweep, first, last);
    }
    for (auto& t : pool) t.join();
  }
  return dyn;
}

/// The cycles of the dynamics. Each cycle is listed from its numerically
/// smallest configuration; cycles are sorted by (length, first configuration).
struct LimitDynamics {
  int n = 0;
  std::vector<std::vector<Config>> cycles;
  std::vector<int> signature;  // sorted multiset of cycle lengths

  std::size_t cycle_count() const { return cycles.size(); }
};

inline LimitDynamics extract_limit_cycles(const DynamicsGraph& dyn) {
  LimitDynamics lim;
  lim.n = dyn.n;

  enum : std::uint8_t { White, Gray, Black };
  std::vector<std::uint8_t> color(dyn.config_count(), White);
  std::vector<Config> path;

  for (Config start = 0; start < dyn.config_count(); ++start) {
    if (color[start] != White) continue;
    path.clear();
    Config cur = start;
    while (color[cur] == White) {
      color[cur] = Gray;
      path.push_back(cur);
      cur = dyn.successor[cur];
    }
    if (color[cur] == Gray) {
      // Ran into the walk itself: the suffix of the path from cur is a cycle.
      std::size_t begin = path.size();
      while (begin > 0 && path[begin - 1] != cur) --begin;
      --begin;
      std::vector<Config> cycle(path.begin() + begin, path.end());
      auto smallest = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), smallest, cycle.end());
      lim.cycles.push_back(std::move(cycle));
    }
    for (Config c : path) color[c] = Black;
  }

  std::sort(lim.cycles.begin(), lim.cycles.end(),
            [](const std::vector<Config>& a, const std::vector<Config>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a.front() < b.front();
            });
  for (const auto& cycle : lim.cycles)
    lim.signature.push_back(static_cast<int>(cycle.size()));
  return lim;
}

inline LimitDynamics limit_dynamics(const AutomataNetwork& net,
                                    const UpdateSchedule& schedule,
                                    int enumeration_cap = kDefaultEnumerationCap,
                                    int jobs = 1) {
  return extract_limit_cycles(full_dynamics(net, schedule, enumeration_cap, jobs));
}

inline std::vector<int> signature(const LimitDynamics& lim) {
  return lim.signature;
}

/// Deterministic limit dynamics are disjoint unions of directed cycles, so
/// digraph isomorphism collapses to equality of the length multisets.
inline bool limit_isomorphic(const LimitDynamics& a, const LimitDynamics& b) {
  return a.signature == b.signature;
}

inline std::size_t count_limit_cycles(const AutomataNetwork& net,
                                      const UpdateSchedule& schedule, int k,
                                      int enumeration_cap = kDefaultEnumerationCap,
                                      int jobs = 1) {
  LimitDynamics lim = limit_dynamics(net, schedule, enumeration_cap, jobs);
  return std::count(lim.signature.begin(), lim.signature.end(), k);
}

inline std::string signature_to_string(const std::vector<int>& sig) {
  std::string out = "{";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sig[i]);
  }
  out += "}";
  return out;
}

}  // namespace ban
