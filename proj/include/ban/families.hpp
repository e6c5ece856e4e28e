/// @file families.hpp
/// @brief Generators and recognizers for cycles, tangential cycles (TCs) and
/// disjunctive double cycles, plus the fast schedule-driven reduction rules
/// for both families.
///
/// A TC is a set of cycles sharing one path, the tangent. The tangent's
/// first automaton (the only one with more than one in-neighbor) is the
/// central automaton; its local function is a disjunctive clause, every
/// other local function is a unary literal. `tangent_length` counts the
/// shared automata beyond the central one, so "tangent 0" means only the
/// central automaton is shared.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ban/graphs.hpp"
#include "ban/network.hpp"
#include "ban/schedule.hpp"

namespace ban {

struct TCSpec {
  std::vector<int> cycle_lengths;                  // c_i >= 1
  std::vector<Sign> cycle_signs;                   // parity of each layout row
  int tangent_length = 0;                          // shared automata past the central
  std::vector<std::vector<Sign>> edge_sign_layout; // edge signs per cycle,
                                                   // walking forward from the
                                                   // central automaton

  bool operator==(const TCSpec&) const = default;

  int cycle_count() const { return static_cast<int>(cycle_lengths.size()); }

  /// 1 central + t tangent automata + each cycle's own path.
  int network_size() const {
    int size = 1 + tangent_length;
    for (int c : cycle_lengths) size += c - tangent_length - 1;
    return size;
  }

  /// Two cycles of length t+1 would both close the tangent onto the central
  /// automaton, which collapses them onto one edge. Such specs are built but
  /// the family theorems are not asserted on them.
  bool degenerate() const {
    int closing = 0;
    for (int c : cycle_lengths)
      if (c == tangent_length + 1) ++closing;
    return closing > 1;
  }

  /// Zipping two cycles of equal length and opposite sign turns the central
  /// clause into a tautology, and the constant central function then prunes
  /// away; the full parallel reduction of such TCs collapses below the
  /// largest-cycle size.
  bool has_opposing_equal_cycles() const {
    for (std::size_t i = 0; i < cycle_lengths.size(); ++i)
      for (std::size_t j = i + 1; j < cycle_lengths.size(); ++j)
        if (cycle_lengths[i] == cycle_lengths[j] &&
            cycle_signs[i] != cycle_signs[j])
          return true;
    return false;
  }

  void validate() const {
    if (cycle_lengths.empty()) throw PreconditionError("TC needs k >= 1 cycles");
    if (tangent_length < 0) throw PreconditionError("negative tangent length");
    if (cycle_signs.size() != cycle_lengths.size() ||
        edge_sign_layout.size() != cycle_lengths.size())
      throw PreconditionError("TC spec fields have mismatched lengths");
    for (std::size_t i = 0; i < cycle_lengths.size(); ++i) {
      if (cycle_lengths[i] <= tangent_length)
        throw PreconditionError("every cycle must be longer than the tangent");
      if (edge_sign_layout[i].size() !=
          static_cast<std::size_t>(cycle_lengths[i]))
        throw PreconditionError("edge sign layout must list one sign per edge");
      int negatives = 0;
      for (Sign s : edge_sign_layout[i])
        if (s == Sign::Negative) ++negatives;
      Sign parity = negatives % 2 == 0 ? Sign::Positive : Sign::Negative;
      if (parity != cycle_signs[i])
        throw PreconditionError("edge sign layout contradicts the cycle sign");
      // Tangent edges are shared; their signs must agree across cycles.
      for (int e = 0; e < tangent_length; ++e)
        if (edge_sign_layout[i][e] != edge_sign_layout[0][e])
          throw PreconditionError("tangent edge signs differ between cycles");
    }
  }
};

/// Canonical layout: all edges positive except, on negative cycles, the edge
/// entering the central automaton. Keeps golden outputs stable; only the
/// parity matters for the theorems.
inline std::vector<Sign> canonical_edge_signs(int length, Sign cycle_sign) {
  std::vector<Sign> signs(static_cast<std::size_t>(length), Sign::Positive);
  if (cycle_sign == Sign::Negative) signs.back() = Sign::Negative;
  return signs;
}

/// Cycles ordered by (length descending, positive before negative), layout
/// regenerated canonically.
inline TCSpec canonicalize(const TCSpec& spec) {
  std::vector<std::size_t> order(spec.cycle_lengths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (spec.cycle_lengths[a] != spec.cycle_lengths[b])
      return spec.cycle_lengths[a] > spec.cycle_lengths[b];
    return spec.cycle_signs[a] == Sign::Positive &&
           spec.cycle_signs[b] == Sign::Negative;
  });
  TCSpec out;
  out.tangent_length = spec.tangent_length;
  for (std::size_t i : order) {
    out.cycle_lengths.push_back(spec.cycle_lengths[i]);
    out.cycle_signs.push_back(spec.cycle_signs[i]);
    out.edge_sign_layout.push_back(
        canonical_edge_signs(spec.cycle_lengths[i], spec.cycle_signs[i]));
  }
  return out;
}

/// Node indices of each cycle in build order, walking forward from the
/// central automaton (index 0).
struct TCLayout {
  std::vector<std::vector<int>> cycles;
};

namespace detail {

inline GateId literal_gate(GatePool& pool, int automaton, Sign sign) {
  GateId in = pool.input(static_cast<std::uint32_t>(automaton));
  return sign == Sign::Positive ? in : pool.gate_not(in);
}

}  // namespace detail

/// Realizes a TC spec as a network: central automaton 0, tangent automata
/// 1..t, then each cycle's own path. The central local function is the
/// disjunction of its in-neighbor literals (a single literal when k = 1).
inline AutomataNetwork build_tc(const TCSpec& spec, TCLayout* layout = nullptr,
                                bool conjunctive_central = false) {
  spec.validate();
  int k = spec.cycle_count();
  int t = spec.tangent_length;

  AutomataNetwork net;
  int n = spec.network_size();
  for (int i = 0; i < n; ++i) net.names.push_back(auto_name(i));
  net.outputs.assign(static_cast<std::size_t>(n), 0);

  TCLayout local;
  TCLayout& lay = layout ? *layout : local;
  lay.cycles.assign(static_cast<std::size_t>(k), {});

  int next = 1 + t;
  for (int i = 0; i < k; ++i) {
    auto& nodes = lay.cycles[static_cast<std::size_t>(i)];
    nodes.push_back(0);
    for (int j = 1; j <= t; ++j) nodes.push_back(j);
    int own = spec.cycle_lengths[static_cast<std::size_t>(i)] - t - 1;
    for (int j = 0; j < own; ++j) nodes.push_back(next++);
  }

  // Non-central functions: each node is the literal of its predecessor.
  for (int i = 0; i < k; ++i) {
    const auto& nodes = lay.cycles[static_cast<std::size_t>(i)];
    const auto& signs = spec.edge_sign_layout[static_cast<std::size_t>(i)];
    for (std::size_t p = 1; p < nodes.size(); ++p)
      net.outputs[static_cast<std::size_t>(nodes[p])] =
          detail::literal_gate(net.pool, nodes[p - 1], signs[p - 1]);
  }

  // Central clause: one literal per cycle, read from the cycle's last node.
  std::vector<GateId> clause;
  for (int i = 0; i < k; ++i) {
    const auto& nodes = lay.cycles[static_cast<std::size_t>(i)];
    const auto& signs = spec.edge_sign_layout[static_cast<std::size_t>(i)];
    clause.push_back(detail::literal_gate(net.pool, nodes.back(), signs.back()));
  }
  net.outputs[0] = clause.size() == 1 ? clause[0]
                   : conjunctive_central ? net.pool.gate_and(std::move(clause))
                                         : net.pool.gate_or(std::move(clause));
  compact(net);  // tangent functions get written once per cycle
  net.validate();
  return net;
}

/// A single cycle: f_{(i+1) mod n} reads automaton i through signs[i].
inline AutomataNetwork build_cycle(int length, const std::vector<Sign>& signs) {
  if (signs.empty()) throw PreconditionError("cycle needs at least one edge sign");
  if (static_cast<int>(signs.size()) != length)
    throw PreconditionError("need exactly one sign per cycle edge");
  int negatives = static_cast<int>(
      std::count(signs.begin(), signs.end(), Sign::Negative));
  TCSpec spec;
  spec.cycle_lengths = {length};
  spec.cycle_signs = {negatives % 2 == 0 ? Sign::Positive : Sign::Negative};
  spec.tangent_length = 0;
  spec.edge_sign_layout = {signs};
  return build_tc(spec);
}

/// DC(s, s', a, b): two cycles of sizes a and b with signs s and s' meeting
/// in one automaton whose local function is a disjunctive clause.
struct DCSpec {
  Sign sign_a = Sign::Positive;
  Sign sign_b = Sign::Positive;
  int size_a = 1;
  int size_b = 1;

  bool operator==(const DCSpec&) const = default;

  /// DC(.,.,1,1) collapses both cycles onto the central self-loop.
  bool degenerate() const { return size_a == 1 && size_b == 1; }

  TCSpec as_tc() const {
    TCSpec spec;
    spec.cycle_lengths = {size_a, size_b};
    spec.cycle_signs = {sign_a, sign_b};
    spec.tangent_length = 0;
    spec.edge_sign_layout = {canonical_edge_signs(size_a, sign_a),
                             canonical_edge_signs(size_b, sign_b)};
    return spec;
  }
};

inline AutomataNetwork build_double_cycle(const DCSpec& spec,
                                          TCLayout* layout = nullptr) {
  if (spec.size_a < 1 || spec.size_b < 1)
    throw PreconditionError("double cycle sizes must be >= 1");
  return build_tc(spec.as_tc(), layout);
}

namespace detail {

/// Input / Not(Input) shape. Returns (automaton, sign) or nullopt.
inline std::optional<std::pair<int, Sign>> literal_shape(const GatePool& pool,
                                                         GateId root) {
  const Gate& g = pool[root];
  if (g.kind == GateKind::Input)
    return std::make_pair(static_cast<int>(g.index), Sign::Positive);
  if (g.kind == GateKind::Not && pool[g.children[0]].kind == GateKind::Input)
    return std::make_pair(static_cast<int>(pool[g.children[0]].index),
                          Sign::Negative);
  return std::nullopt;
}

}  // namespace detail

/// Structural TC recognition. Accepts networks whose non-central functions
/// are unary literals and whose central function is a disjunctive clause
/// over distinct in-neighbors; semantically-unary-but-complex circuits are
/// rejected (normalize first via the reducer).
inline std::optional<TCSpec> recognize_tc(const AutomataNetwork& net,
                                          TCLayout* layout = nullptr) {
  int n = net.size();
  if (n == 0) return std::nullopt;

  // Classify every local function: a literal, or the unique clause.
  std::vector<std::optional<std::pair<int, Sign>>> literal(
      static_cast<std::size_t>(n));
  int central = -1;
  std::vector<std::pair<int, Sign>> clause;  // in-neighbor literals of central
  for (int i = 0; i < n; ++i) {
    GateId root = net.outputs[static_cast<std::size_t>(i)];
    literal[i] = detail::literal_shape(net.pool, root);
    if (literal[i]) continue;
    const Gate& g = net.pool[root];
    if (g.kind != GateKind::Or || g.children.size() < 2) return std::nullopt;
    if (central >= 0) return std::nullopt;  // two clause-shaped functions
    central = i;
    for (GateId child : g.children) {
      auto lit = detail::literal_shape(net.pool, child);
      if (!lit) return std::nullopt;
      for (const auto& other : clause)
        if (other.first == lit->first) return std::nullopt;  // duplicate var
      clause.push_back(*lit);
    }
  }

  if (central < 0) {
    // All literals: must be one cycle through every automaton. Take the
    // smallest index as the central automaton of a k=1 spec.
    central = 0;
    clause.push_back(*literal[0]);
  }

  // Walk each cycle backward from the central automaton's in-neighbor;
  // predecessors of non-central automata are unique by construction. The
  // collected signs run backward too: entering-central edge first.
  std::vector<std::vector<int>> cycles;
  std::vector<std::vector<Sign>> layouts;
  for (const auto& [entry, entry_sign] : clause) {
    std::vector<int> back;
    std::vector<Sign> back_signs{entry_sign};
    int cur = entry;
    std::size_t guard = 0;
    while (cur != central) {
      if (++guard > static_cast<std::size_t>(n)) return std::nullopt;
      back.push_back(cur);
      if (!literal[cur]) return std::nullopt;
      back_signs.push_back(literal[cur]->second);
      cur = literal[cur]->first;
    }
    std::vector<int> cycle{central};
    cycle.insert(cycle.end(), back.rbegin(), back.rend());
    std::vector<Sign> signs(back_signs.rbegin(), back_signs.rend());
    cycles.push_back(std::move(cycle));
    layouts.push_back(std::move(signs));
  }

  // Every automaton must lie on some cycle.
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  for (const auto& cycle : cycles)
    for (int v : cycle) covered[static_cast<std::size_t>(v)] = true;
  for (bool c : covered)
    if (!c) return std::nullopt;

  // Tangent: the longest common prefix of all cycles, walking forward from
  // the central automaton. Equal node prefixes share the same physical
  // edges, so edge signs agree automatically. A single cycle has tangent 0.
  std::size_t prefix = cycles.front().size();
  for (const auto& cycle : cycles) {
    std::size_t p = 0;
    while (p < prefix && p < cycle.size() && cycle[p] == cycles.front()[p]) ++p;
    prefix = p;
  }
  int tangent = cycles.size() == 1 ? 0 : static_cast<int>(prefix) - 1;

  // Cycles may share the tangent and nothing else.
  for (std::size_t i = 0; i + 1 < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      for (int u : cycles[i]) {
        bool in_j = std::find(cycles[j].begin(), cycles[j].end(), u) !=
                    cycles[j].end();
        bool in_tangent = false;
        for (int p = 0; p <= tangent; ++p)
          if (cycles[i][static_cast<std::size_t>(p)] == u) in_tangent = true;
        if (in_j != in_tangent) return std::nullopt;
      }
    }

  TCSpec spec;
  spec.tangent_length = tangent;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    spec.cycle_lengths.push_back(static_cast<int>(cycles[i].size()));
    int negatives = static_cast<int>(
        std::count(layouts[i].begin(), layouts[i].end(), Sign::Negative));
    spec.cycle_signs.push_back(negatives % 2 == 0 ? Sign::Positive
                                                  : Sign::Negative);
    spec.edge_sign_layout.push_back(layouts[i]);
  }

  // Canonical cycle order, but keep the layouts actually observed.
  std::vector<std::size_t> order(cycles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (spec.cycle_lengths[a] != spec.cycle_lengths[b])
      return spec.cycle_lengths[a] > spec.cycle_lengths[b];
    return spec.cycle_signs[a] == Sign::Positive &&
           spec.cycle_signs[b] == Sign::Negative;
  });
  TCSpec sorted;
  sorted.tangent_length = spec.tangent_length;
  TCLayout sorted_layout;
  for (std::size_t i : order) {
    sorted.cycle_lengths.push_back(spec.cycle_lengths[i]);
    sorted.cycle_signs.push_back(spec.cycle_signs[i]);
    sorted.edge_sign_layout.push_back(spec.edge_sign_layout[i]);
    sorted_layout.cycles.push_back(cycles[i]);
  }
  sorted.validate();
  if (layout) *layout = sorted_layout;
  return sorted;
}

namespace detail {

/// LT edges along one cycle's forward node list under a block-sequential
/// schedule. Tangent edges belong to every cycle that runs through them.
inline int lt_edges_on_cycle(const std::vector<int>& nodes,
                             const UpdateSchedule& schedule) {
  int count = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    int u = nodes[i];
    int v = nodes[(i + 1) % nodes.size()];
    if (schedule.block_index_of(u) < schedule.block_index_of(v)) ++count;
  }
  return count;
}

}  // namespace detail

/// The closing rule for TCs: subtract each cycle's LT-edge count from its
/// length (tangent LT edges shorten the tangent, and with it every cycle),
/// keep every sign. The reduced spec under pi has limit dynamics isomorphic
/// to the realized network under Delta.
inline TCSpec tc_fast_reduce(const TCSpec& spec, const UpdateSchedule& schedule,
                             const AutomataNetwork& realized) {
  spec.validate();
  TCLayout layout;
  AutomataNetwork expected = build_tc(spec, &layout);
  if (network_tree_key(expected) != network_tree_key(realized))
    throw PreconditionError("network does not realize the given TC spec");
  require_block_sequential(schedule, realized.size());

  // Tangent edges are the first t edges of any cycle; count them once.
  int tangent_lt = 0;
  for (int e = 0; e < spec.tangent_length; ++e) {
    int u = layout.cycles.front()[static_cast<std::size_t>(e)];
    int v = layout.cycles.front()[static_cast<std::size_t>(e + 1)];
    if (schedule.block_index_of(u) < schedule.block_index_of(v)) ++tangent_lt;
  }

  TCSpec out;
  out.tangent_length = spec.tangent_length - tangent_lt;
  for (std::size_t i = 0; i < layout.cycles.size(); ++i) {
    int lt = detail::lt_edges_on_cycle(layout.cycles[i], schedule);
    int reduced = spec.cycle_lengths[i] - lt;
    if (reduced < 1)
      throw PreconditionError("cycle reduced below length 1");
    out.cycle_lengths.push_back(reduced);
    out.cycle_signs.push_back(spec.cycle_signs[i]);
    out.edge_sign_layout.push_back(
        canonical_edge_signs(reduced, spec.cycle_signs[i]));
  }
  out.validate();
  return canonicalize(out);
}

/// Theorem for double cycles: with A (resp. B) LT edges on the a-cycle
/// (resp. b-cycle), DC(s, s', a, b) under Delta has limit dynamics
/// isomorphic to DC(s, s', a-A, b-B) under pi.
inline DCSpec dc_reduce(const DCSpec& spec, const UpdateSchedule& schedule) {
  TCLayout layout;
  AutomataNetwork net = build_double_cycle(spec, &layout);
  require_block_sequential(schedule, net.size());
  int lt_a = detail::lt_edges_on_cycle(layout.cycles[0], schedule);
  int lt_b = detail::lt_edges_on_cycle(layout.cycles[1], schedule);
  DCSpec out{spec.sign_a, spec.sign_b, spec.size_a - lt_a, spec.size_b - lt_b};
  if (out.size_a < 1 || out.size_b < 1)
    throw PreconditionError("cycle reduced below length 1");
  return out;
}

}  // namespace ban
