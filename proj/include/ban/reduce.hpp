/// @file reduce.hpp
/// @brief Size reduction of parallel networks: merge automata whose local
/// functions are equal up to a Boolean bijection, then prune automata that
/// influence nothing. Limit dynamics are preserved up to isomorphism.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ban/families.hpp"
#include "ban/graphs.hpp"
#include "ban/network.hpp"
#include "ban/parallelize.hpp"
#include "ban/schedule.hpp"

namespace ban {

/// The reversible unary maps on {0,1}. Constant maps also satisfy the merge
/// equation but are not reversible; they are surfaced as warnings instead.
enum class UnaryMap { Identity, Negation };

inline const char* unary_map_name(UnaryMap g) {
  return g == UnaryMap::Identity ? "identity" : "negation";
}

struct MergeRecord {
  std::string removed;
  std::string kept;
  UnaryMap map = UnaryMap::Identity;
};

struct ReductionReport {
  std::size_t initial_size = 0;
  std::size_t final_size = 0;
  std::vector<MergeRecord> merges;
  std::vector<std::string> pruned;  // removed without a prior merge
  std::vector<std::string> warnings;

  std::size_t removed_count() const { return merges.size() + pruned.size(); }
};

/// Does f_u equal g(f_v) for a reversible g? Exhaustive over the union of
/// both supports: Identity when f_u = f_v, Negation when f_u = !f_v.
inline std::optional<UnaryMap> unary_equiv(const AutomataNetwork& net, int u,
                                           int v,
                                           int support_cap = kDefaultSupportCap) {
  if (u == v) throw PreconditionError("unary_equiv needs two distinct automata");
  std::vector<int> support =
      circuit_support(net.pool, net.outputs[static_cast<std::size_t>(u)]);
  for (int w :
       circuit_support(net.pool, net.outputs[static_cast<std::size_t>(v)]))
    support.push_back(w);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (static_cast<int>(support.size()) > support_cap)
    throw CapExceededError("support cap exceeded");

  Evaluator ev(net);
  GateId fu = net.outputs[static_cast<std::size_t>(u)];
  GateId fv = net.outputs[static_cast<std::size_t>(v)];
  bool all_equal = true, all_opposite = true;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << support.size()); ++m) {
    Config x = 0;
    for (std::size_t k = 0; k < support.size(); ++k)
      if ((m >> k) & 1) x = with_config_bit(x, support[k], true);
    ev.begin();
    bool a = ev.eval(fu, x);
    bool b = ev.eval(fv, x);
    all_equal = all_equal && a == b;
    all_opposite = all_opposite && a != b;
    if (!all_equal && !all_opposite) return std::nullopt;
  }
  if (all_equal) return UnaryMap::Identity;
  if (all_opposite) return UnaryMap::Negation;
  return std::nullopt;
}

/// Substitutes x_u by g(x_v) in every circuit. Afterwards u influences
/// nothing; a later prune removes it.
inline AutomataNetwork merge(const AutomataNetwork& net, int u, int v,
                             UnaryMap g,
                             int support_cap = kDefaultSupportCap) {
  auto found = unary_equiv(net, u, v, support_cap);
  if (!found || *found != g)
    throw PreconditionError("merge precondition violated: f_u != g(f_v)");

  AutomataNetwork out = net;
  // Appending reallocates the pool, so create the shared wire up front
  // rather than while holding references into it.
  GateId shared_input_v = static_cast<GateId>(-1);
  if (g == UnaryMap::Negation)
    shared_input_v = out.pool.input(static_cast<std::uint32_t>(v));
  for (Gate& gate : out.pool.gates) {
    if (gate.kind != GateKind::Input ||
        gate.index != static_cast<std::uint32_t>(u))
      continue;
    if (g == UnaryMap::Identity) {
      gate.index = static_cast<std::uint32_t>(v);
    } else {
      gate.kind = GateKind::Not;
      gate.index = 0;
      gate.children = {shared_input_v};
    }
  }
  out.validate();
  return out;
}

namespace detail {

/// Physically removes the given automata and reindexes the survivors.
/// Inputs that still syntactically mention a removed automaton are vacuous
/// by construction and become constant 0.
inline AutomataNetwork remove_automata(const AutomataNetwork& net,
                                       const std::vector<bool>& remove) {
  AutomataNetwork out;
  std::vector<int> new_index(static_cast<std::size_t>(net.size()), -1);
  for (int i = 0; i < net.size(); ++i) {
    if (remove[static_cast<std::size_t>(i)]) continue;
    new_index[static_cast<std::size_t>(i)] = out.size();
    out.names.push_back(net.names[static_cast<std::size_t>(i)]);
  }
  std::vector<GateId> memo;  // shared across outputs: keeps sharing intact
  for (int i = 0; i < net.size(); ++i) {
    if (remove[static_cast<std::size_t>(i)]) continue;
    out.outputs.push_back(copy_subgraph(
        net.pool, net.outputs[static_cast<std::size_t>(i)], out.pool, memo));
  }
  for (Gate& g : out.pool.gates) {
    if (g.kind != GateKind::Input) continue;
    int mapped = new_index[g.index];
    if (mapped < 0) {
      g.kind = GateKind::Const;
      g.value = false;
      g.index = 0;
    } else {
      g.index = static_cast<std::uint32_t>(mapped);
    }
  }
  out.validate();
  return out;
}

/// Rebuilds each local function with double negations collapsed, unary
/// AND/OR removed and not-chains over inputs folded into plain literals.
/// Purely structural; the functions themselves are unchanged.
inline AutomataNetwork normalize_literals(const AutomataNetwork& net) {
  AutomataNetwork out;
  out.names = net.names;
  std::map<std::pair<GateId, bool>, GateId> memo;

  // (gate, negated) -> normalized gate in the fresh pool
  auto normalize = [&](auto&& self, GateId id, bool negated) -> GateId {
    auto key = std::make_pair(id, negated);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;

    const Gate& g = net.pool[id];
    GateId result;
    switch (g.kind) {
      case GateKind::Not:
        return self(self, g.children[0], !negated);
      case GateKind::And:
      case GateKind::Or: {
        if (g.children.size() == 1) return self(self, g.children[0], negated);
        std::vector<GateId> children;
        children.reserve(g.children.size());
        for (GateId c : g.children) children.push_back(self(self, c, false));
        result = g.kind == GateKind::And ? out.pool.gate_and(std::move(children))
                                         : out.pool.gate_or(std::move(children));
        if (negated) result = out.pool.gate_not(result);
        break;
      }
      case GateKind::Const:
        result = out.pool.constant(g.value != negated);
        break;
      case GateKind::Input:
      case GateKind::Theta: {
        Gate leaf = g;
        leaf.children.clear();
        result = out.pool.add(leaf);
        if (negated) result = out.pool.gate_not(result);
        break;
      }
    }
    memo.emplace(key, result);
    return result;
  };

  for (GateId root : net.outputs)
    out.outputs.push_back(normalize(normalize, root, false));
  compact(out);
  return out;
}

inline bool is_constant_function(const AutomataNetwork& net, int i,
                                 int support_cap) {
  std::vector<int> support =
      circuit_support(net.pool, net.outputs[static_cast<std::size_t>(i)]);
  if (static_cast<int>(support.size()) > support_cap)
    throw CapExceededError("support cap exceeded");
  Evaluator ev(net);
  GateId root = net.outputs[static_cast<std::size_t>(i)];
  ev.begin();
  bool first = ev.eval(root, 0);
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << support.size()); ++m) {
    Config x = 0;
    for (std::size_t k = 0; k < support.size(); ++k)
      if ((m >> k) & 1) x = with_config_bit(x, support[k], true);
    ev.begin();
    if (ev.eval(root, x) != first) return false;
  }
  return true;
}

/// The merge scan shared by both reduction algorithms. Pairs are visited as
/// (kept index ascending, removed index ascending), the higher index is
/// removed, and the scan restarts after every merge. When `restricted` is
/// set only pairs touching an automaton with more than one in-neighbor are
/// eligible, plus any pair explicitly licensed by the caller.
inline void merge_scan(AutomataNetwork& net, std::vector<bool>& merged_away,
                       ReductionReport& report, bool restricted,
                       const std::vector<std::vector<bool>>* licensed,
                       int support_cap) {
  int n = net.size();
  bool hit = true;
  while (hit) {
    hit = false;
    InteractionDigraph gi = interaction_digraph(net, support_cap);
    for (int kept = 0; kept < n && !hit; ++kept) {
      if (merged_away[static_cast<std::size_t>(kept)]) continue;
      for (int removed = kept + 1; removed < n && !hit; ++removed) {
        if (merged_away[static_cast<std::size_t>(removed)]) continue;
        if (restricted && gi.in_degree(kept) <= 1 &&
            gi.in_degree(removed) <= 1 &&
            !(licensed && (*licensed)[static_cast<std::size_t>(kept)]
                                     [static_cast<std::size_t>(removed)]))
          continue;
        auto g = unary_equiv(net, removed, kept, support_cap);
        if (!g) continue;
        net = merge(net, removed, kept, *g, support_cap);
        merged_away[static_cast<std::size_t>(removed)] = true;
        report.merges.push_back({net.names[static_cast<std::size_t>(removed)],
                                 net.names[static_cast<std::size_t>(kept)], *g});
        hit = true;
      }
    }
  }
}

}  // namespace detail

/// Iteratively removes automata with no out-edge in the (semantically
/// recomputed) interaction digraph until none remain.
inline AutomataNetwork prune_influenceless(
    const AutomataNetwork& net, std::vector<std::string>* pruned_names = nullptr,
    int support_cap = kDefaultSupportCap) {
  AutomataNetwork cur = net;
  for (;;) {
    InteractionDigraph gi = interaction_digraph(cur, support_cap);
    std::vector<bool> remove(static_cast<std::size_t>(cur.size()), false);
    bool any = false;
    for (int i = 0; i < cur.size(); ++i)
      if (gi.out_degree(i) == 0) {
        remove[static_cast<std::size_t>(i)] = true;
        if (pruned_names)
          pruned_names->push_back(cur.names[static_cast<std::size_t>(i)]);
        any = true;
      }
    if (!any) return cur;
    cur = detail::remove_automata(cur, remove);
  }
}

/// Reduction of a parallel network: scan automaton pairs for reversible
/// unary equivalences, merge them, then prune until fixpoint. The caller is
/// expected to parallelize first; the limit dynamics of the result under pi
/// are isomorphic to the input's.
inline std::pair<AutomataNetwork, ReductionReport> reduce_parallel(
    const AutomataNetwork& net, int support_cap = kDefaultSupportCap) {
  ReductionReport report;
  report.initial_size = static_cast<std::size_t>(net.size());

  AutomataNetwork work = net;
  std::vector<bool> merged_away(static_cast<std::size_t>(net.size()), false);
  detail::merge_scan(work, merged_away, report, /*restricted=*/false, nullptr,
                     support_cap);

  for (int i = 0; i < work.size(); ++i)
    if (detail::is_constant_function(work, i, support_cap))
      report.warnings.push_back(
          "local function of '" + work.names[static_cast<std::size_t>(i)] +
          "' is constant; non-reversible equivalences are not merged");

  std::vector<std::string> physically_pruned;
  work = prune_influenceless(work, &physically_pruned, support_cap);
  for (const std::string& name : physically_pruned) {
    bool was_merge = false;
    for (const auto& m : report.merges) was_merge = was_merge || m.removed == name;
    if (!was_merge) report.pruned.push_back(name);
  }

  work = detail::normalize_literals(work);
  report.final_size = static_cast<std::size_t>(work.size());
  if (report.final_size != report.initial_size - report.removed_count())
    throw Error("reduction report does not add up");
  return {std::move(work), std::move(report)};
}

/// TC-preserving reduction: parallelize, then restrict the merge scan to
/// pairs involving an automaton with more than one in-neighbor, and prune in
/// a single pass (ascending index, out-degrees tracked as removals happen).
/// Removes exactly one automaton per LT edge of G_U(F_Delta) and returns a
/// TC. `fixpoint_prune` switches to the iterated prune for experiments.
inline std::pair<AutomataNetwork, ReductionReport> reduce_tc(
    const AutomataNetwork& net, const UpdateSchedule& schedule,
    int support_cap = kDefaultSupportCap, bool fixpoint_prune = false) {
  if (!recognize_tc(net)) throw PreconditionError("input is not a TC");
  require_block_sequential(schedule, net.size());

  ReductionReport report;
  report.initial_size = static_cast<std::size_t>(net.size());

  // Besides the in-degree condition, license merges within each connected
  // component of the LT subgraph: every LT edge (u, v) rewrites f_v into a
  // copy of f_u's shape, and chains of LT edges propagate that shape, so a
  // whole component becomes interchangeable duplicates. The in-degree
  // condition alone misses these at the tangent's fan-out node, where u
  // keeps other out-neighbors and is never pruned.
  std::size_t count = static_cast<std::size_t>(net.size());
  std::vector<std::size_t> component(count);
  for (std::size_t i = 0; i < count; ++i) component[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return component[x] == x ? x : component[x] = find(component[x]);
  };
  UpdateDigraph ud = update_digraph(net, schedule, support_cap);
  for (std::size_t e = 0; e < ud.base.edges.size(); ++e)
    if (ud.labels[e] == EdgeLabel::LT)
      component[find(static_cast<std::size_t>(ud.base.edges[e].first))] =
          find(static_cast<std::size_t>(ud.base.edges[e].second));
  std::vector<std::vector<bool>> licensed(count, std::vector<bool>(count, false));
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b)
      if (a != b && find(a) == find(b)) licensed[a][b] = true;

  AutomataNetwork work = parallelize(net, schedule, support_cap);
  std::vector<bool> merged_away(static_cast<std::size_t>(net.size()), false);
  detail::merge_scan(work, merged_away, report, /*restricted=*/true, &licensed,
                     support_cap);

  std::vector<std::string> physically_pruned;
  if (fixpoint_prune) {
    work = prune_influenceless(work, &physically_pruned, support_cap);
  } else {
    // Single pass over the automata in ascending index order. Removing u
    // only deletes edges into u, so survivors' influence edges are stable
    // and one digraph suffices.
    InteractionDigraph gi = interaction_digraph(work, support_cap);
    std::vector<bool> live(static_cast<std::size_t>(work.size()), true);
    for (int u = 0; u < work.size(); ++u) {
      int out_degree = 0;
      for (const auto& [a, b] : gi.edges)
        if (a == u && live[static_cast<std::size_t>(b)]) ++out_degree;
      if (out_degree == 0) {
        live[static_cast<std::size_t>(u)] = false;
        physically_pruned.push_back(work.names[static_cast<std::size_t>(u)]);
      }
    }
    std::vector<bool> remove(live.size());
    for (std::size_t i = 0; i < live.size(); ++i) remove[i] = !live[i];
    work = detail::remove_automata(work, remove);
  }
  for (const std::string& name : physically_pruned) {
    bool was_merge = false;
    for (const auto& m : report.merges) was_merge = was_merge || m.removed == name;
    if (!was_merge) report.pruned.push_back(name);
  }

  work = detail::normalize_literals(work);
  report.final_size = static_cast<std::size_t>(work.size());
  if (report.final_size != report.initial_size - report.removed_count())
    throw Error("reduction report does not add up");
  return {std::move(work), std::move(report)};
}

}  // namespace ban
