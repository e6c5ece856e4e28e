/// @file parallelize.hpp
/// @brief Rewrites (F, Delta) with Delta block-sequential into a network F'
/// over the same automata whose parallel dynamics equals F_Delta.
///
/// Two waves of substitutions on the circuit pool: first every input read
/// across an LT edge is retyped into a transient theta placeholder, then the
/// placeholders are resolved in dependency order by splicing shared wires to
/// the producing circuit's output. Splices share, never copy, which is what
/// keeps the rewrite polynomial for circuit-encoded local functions.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ban/graphs.hpp"
#include "ban/network.hpp"
#include "ban/schedule.hpp"

namespace ban {

struct ParallelizeStats {
  std::size_t input_gate_count = 0;
  std::size_t output_gate_count = 0;
  std::size_t resolution_steps = 0;
};

/// First loop of the rewrite: for every LT edge (u, v) of G_U(F_Delta),
/// retype every Input(u) gate of f_v into Theta(u). The result is a
/// transient network; it cannot be evaluated until the thetas are resolved.
inline AutomataNetwork insert_thetas(const AutomataNetwork& net,
                                     const UpdateSchedule& schedule,
                                     int support_cap = kDefaultSupportCap) {
  require_block_sequential(schedule, net.size());
  UpdateDigraph ud = update_digraph(net, schedule, support_cap);

  // Work on per-automaton copies of the local functions so retyping a gate
  // of f_v can never leak into a circuit that shares it.
  AutomataNetwork out;
  out.names = net.names;
  for (GateId root : net.outputs) {
    std::vector<GateId> memo;  // fresh per output: no cross-output sharing
    out.outputs.push_back(copy_subgraph(net.pool, root, out.pool, memo));
  }

  for (std::size_t e = 0; e < ud.base.edges.size(); ++e) {
    if (ud.labels[e] != EdgeLabel::LT) continue;
    auto [u, v] = ud.base.edges[e];
    for (GateId id : reachable_gates(out.pool, out.outputs[v])) {
      Gate& g = out.pool[id];
      if (g.kind == GateKind::Input && g.index == static_cast<std::uint32_t>(u))
        g.kind = GateKind::Theta;
    }
  }
  out.validate(/*allow_thetas=*/true);
  return out;
}

/// Second loop: repeatedly pick the lowest-index automaton whose circuit is
/// theta-free and splice its output wire into every Theta gate that
/// references it. Terminates in exactly n steps for any transient network
/// produced from a block-sequential schedule.
inline AutomataNetwork resolve_thetas(const AutomataNetwork& transient,
                                      ParallelizeStats* stats = nullptr) {
  AutomataNetwork net = transient;
  int n = net.size();
  std::vector<bool> remaining(static_cast<std::size_t>(n), true);
  std::size_t steps = 0;

  for (int round = 0; round < n; ++round) {
    int s = -1;
    for (int i = 0; i < n; ++i)
      if (remaining[i] && !has_theta(net.pool, net.outputs[i])) {
        s = i;
        break;
      }
    if (s < 0)
      throw PreconditionError(
          "no theta-free circuit available: transient network is corrupt");
    remaining[s] = false;
    ++steps;

    // theta_s -> f_s everywhere: re-point parents and outputs, keep sharing.
    GateId target = net.outputs[s];
    auto is_theta_s = [&](GateId id) {
      const Gate& g = net.pool[id];
      return g.kind == GateKind::Theta &&
             g.index == static_cast<std::uint32_t>(s);
    };
    for (Gate& g : net.pool.gates)
      for (GateId& child : g.children)
        if (is_theta_s(child)) child = target;
    for (GateId& root : net.outputs)
      if (is_theta_s(root)) root = target;
  }

  net.validate();
  compact(net);
  if (stats) stats->resolution_steps = steps;
  return net;
}

/// Structural deduplication of the gate pool (hash-consing). Optional
/// post-pass; identical subtrees collapse onto one shared gate.
inline void hash_cons(AutomataNetwork& net) {
  compact(net);  // establishes child-before-parent ids
  GatePool fresh;
  std::map<std::string, GateId> seen;
  std::vector<GateId> remap(net.pool.size());

  // compact() copies post-order, so children carry lower ids than their
  // parents; an ascending sweep sees every child remapped first.
  for (std::size_t i = 0; i < net.pool.size(); ++i) {
    Gate g = net.pool[static_cast<GateId>(i)];
    for (GateId& c : g.children) c = remap[c];
    std::string key;
    key += static_cast<char>('A' + static_cast<int>(g.kind));
    key += std::to_string(g.index);
    key += g.value ? 'T' : 'F';
    for (GateId c : g.children) {
      key += ',';
      key += std::to_string(c);
    }
    auto it = seen.find(key);
    if (it != seen.end()) {
      remap[i] = it->second;
    } else {
      GateId id = fresh.add(std::move(g));
      seen.emplace(std::move(key), id);
      remap[i] = id;
    }
  }
  for (GateId& root : net.outputs) root = remap[root];
  net.pool = std::move(fresh);
  compact(net);
}

/// Algorithm: insert thetas, then resolve them. The returned network F'
/// satisfies F_Delta(x) = F'_pi(x) for every configuration x, on the same
/// automata set.
inline AutomataNetwork parallelize(const AutomataNetwork& net,
                                   const UpdateSchedule& schedule,
                                   int support_cap = kDefaultSupportCap,
                                   ParallelizeStats* stats = nullptr,
                                   bool hash_cons_pass = false) {
  ParallelizeStats local;
  ParallelizeStats* st = stats ? stats : &local;
  st->input_gate_count = net.live_gate_count();

  AutomataNetwork result =
      resolve_thetas(insert_thetas(net, schedule, support_cap), st);
  if (hash_cons_pass) hash_cons(result);

  st->output_gate_count = result.live_gate_count();
  std::size_t n = static_cast<std::size_t>(net.size());
  std::size_t bound = (st->input_gate_count + n) * (st->input_gate_count + n);
  if (st->output_gate_count > bound)
    throw Error("parallelization exceeded its size bound");
  return result;
}

}  // namespace ban
