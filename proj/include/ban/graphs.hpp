/// @file graphs.hpp
/// @brief Influence, interaction digraphs, update digraphs and signs.
///
/// Influence and signs are decided semantically, by exhaustive enumeration
/// over the input support of the observed circuit. Substitutions can leave
/// vacuous inputs behind, so syntactic dependence would over-approximate.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ban/network.hpp"
#include "ban/schedule.hpp"

namespace ban {

constexpr int kDefaultSupportCap = 20;

namespace detail {

inline std::vector<int> checked_support(const AutomataNetwork& net, int j,
                                        int support_cap) {
  std::vector<int> support =
      circuit_support(net.pool, net.outputs[static_cast<std::size_t>(j)]);
  if (static_cast<int>(support.size()) > support_cap)
    throw CapExceededError("influence check too large");
  return support;
}

}  // namespace detail

/// True iff some single flip of automaton i changes f_j. Exhaustive over the
/// input support of f_j.
inline bool influences(const AutomataNetwork& net, int i, int j,
                       int support_cap = kDefaultSupportCap) {
  if (i < 0 || i >= net.size() || j < 0 || j >= net.size())
    throw PreconditionError("automaton index out of range");
  std::vector<int> support = detail::checked_support(net, j, support_cap);
  if (std::find(support.begin(), support.end(), i) == support.end())
    return false;
  std::vector<int> others;
  for (int v : support)
    if (v != i) others.push_back(v);

  Evaluator ev(net);
  GateId root = net.outputs[static_cast<std::size_t>(j)];
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << others.size()); ++m) {
    Config x = 0;
    for (std::size_t k = 0; k < others.size(); ++k)
      if ((m >> k) & 1) x = with_config_bit(x, others[k], true);
    ev.begin();
    bool v0 = ev.eval(root, x);
    ev.begin();
    bool v1 = ev.eval(root, with_config_bit(x, i, true));
    if (v0 != v1) return true;
  }
  return false;
}

/// G_I(F): nodes are the automata, (u, v) is an edge iff u influences v.
struct InteractionDigraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // sorted lexicographically

  bool has_edge(int u, int v) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
  }
  int out_degree(int u) const {
    int d = 0;
    for (const auto& [a, b] : edges)
      if (a == u) ++d;
    return d;
  }
  int in_degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges)
      if (b == v) ++d;
    return d;
  }
  std::vector<int> in_neighbors(int v) const {
    std::vector<int> r;
    for (const auto& [a, b] : edges)
      if (b == v) r.push_back(a);
    return r;
  }
};

inline InteractionDigraph interaction_digraph(
    const AutomataNetwork& net, int support_cap = kDefaultSupportCap) {
  InteractionDigraph g;
  g.n = net.size();
  for (int v = 0; v < g.n; ++v) {
    // One support scan per target keeps this n * 2^{|support|}.
    for (int u : detail::checked_support(net, v, support_cap))
      if (influences(net, u, v, support_cap)) g.edges.push_back({u, v});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

enum class EdgeLabel : std::uint8_t { LT, GE };

/// G_U(F_Delta): the interaction digraph with each edge (u, v) labeled LT
/// when u's block strictly precedes v's, GE otherwise.
struct UpdateDigraph {
  InteractionDigraph base;
  std::vector<EdgeLabel> labels;  // aligned with base.edges

  std::optional<EdgeLabel> label_of(int u, int v) const {
    auto it = std::lower_bound(base.edges.begin(), base.edges.end(),
                               std::make_pair(u, v));
    if (it == base.edges.end() || *it != std::make_pair(u, v))
      return std::nullopt;
    return labels[static_cast<std::size_t>(it - base.edges.begin())];
  }

  std::size_t lt_edge_count() const {
    std::size_t c = 0;
    for (EdgeLabel l : labels)
      if (l == EdgeLabel::LT) ++c;
    return c;
  }
};

inline UpdateDigraph update_digraph(const AutomataNetwork& net,
                                    const UpdateSchedule& schedule,
                                    int support_cap = kDefaultSupportCap) {
  require_block_sequential(schedule, net.size());
  UpdateDigraph ud;
  ud.base = interaction_digraph(net, support_cap);
  ud.labels.reserve(ud.base.edges.size());
  for (const auto& [u, v] : ud.base.edges) {
    int bu = schedule.block_index_of(u);
    int bv = schedule.block_index_of(v);
    ud.labels.push_back(bu < bv ? EdgeLabel::LT : EdgeLabel::GE);
  }
  // LT edges strictly increase the block index, so the LT subgraph cannot
  // contain a cycle. Guard against corruption of the schedule lookup.
  for (std::size_t e = 0; e < ud.base.edges.size(); ++e)
    if (ud.labels[e] == EdgeLabel::LT &&
        schedule.block_index_of(ud.base.edges[e].first) >=
            schedule.block_index_of(ud.base.edges[e].second))
      throw Error("LT subgraph invariant violated");
  return ud;
}

enum class Sign : std::uint8_t { Positive, Negative };

inline Sign opposite(Sign s) {
  return s == Sign::Positive ? Sign::Negative : Sign::Positive;
}

inline char sign_char(Sign s) { return s == Sign::Positive ? '+' : '-'; }

/// Sign of the edge (u, v): positive when f_v is monotone non-decreasing in
/// x_u, negative when non-increasing, over the whole support cube. Requires
/// actual influence and monotone dependence.
inline Sign edge_sign(const AutomataNetwork& net, int u, int v,
                      int support_cap = kDefaultSupportCap) {
  std::vector<int> support = detail::checked_support(net, v, support_cap);
  std::vector<int> others;
  for (int w : support)
    if (w != u) others.push_back(w);

  bool saw_increase = false, saw_decrease = false;
  Evaluator ev(net);
  GateId root = net.outputs[static_cast<std::size_t>(v)];
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << others.size()); ++m) {
    Config x = 0;
    for (std::size_t k = 0; k < others.size(); ++k)
      if ((m >> k) & 1) x = with_config_bit(x, others[k], true);
    ev.begin();
    bool v0 = ev.eval(root, with_config_bit(x, u, false));
    ev.begin();
    bool v1 = ev.eval(root, with_config_bit(x, u, true));
    if (!v0 && v1) saw_increase = true;
    if (v0 && !v1) saw_decrease = true;
  }
  if (saw_increase && saw_decrease)
    throw PreconditionError("unsigned edge: non-monotone dependence");
  if (!saw_increase && !saw_decrease)
    throw PreconditionError("edge has no influence");
  return saw_increase ? Sign::Positive : Sign::Negative;
}

/// Sign of a cycle given as a node sequence (v0, v1, ..., vk-1), meaning the
/// edges (v0,v1), ..., (vk-1,v0). Positive iff the number of negative edges
/// is even.
inline Sign cycle_sign(const AutomataNetwork& net, const std::vector<int>& cycle,
                       int support_cap = kDefaultSupportCap) {
  if (cycle.empty()) throw PreconditionError("empty cycle");
  int negatives = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    int u = cycle[i];
    int v = cycle[(i + 1) % cycle.size()];
    if (edge_sign(net, u, v, support_cap) == Sign::Negative) ++negatives;
  }
  return negatives % 2 == 0 ? Sign::Positive : Sign::Negative;
}

}  // namespace ban
