/// @file circuit.hpp
/// @brief Boolean circuits stored in a shared gate pool.
///
/// Local functions are encoded as acyclic gate graphs. A network keeps all
/// its gates in one pool so that rewriting steps can splice shared wires
/// instead of copying subcircuits.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ban/errors.hpp"

namespace ban {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t {
  Input,  // reads the state of one automaton
  Theta,  // transient placeholder input used while parallelizing
  Const,  // fixed 0/1
  Not,    // one child
  And,    // >= 1 children, unary acts as identity
  Or,     // >= 1 children, unary acts as identity
};

struct Gate {
  GateKind kind;
  std::uint32_t index = 0;  // automaton index for Input/Theta
  bool value = false;       // payload for Const
  std::vector<GateId> children;
};

/// Append-only gate storage. Gates reference children by id within the
/// same pool; rewrites retype gates in place, which keeps parent links valid.
struct GatePool {
  std::vector<Gate> gates;

  std::size_t size() const { return gates.size(); }
  Gate& operator[](GateId id) { return gates[id]; }
  const Gate& operator[](GateId id) const { return gates[id]; }

  GateId add(Gate g) {
    gates.push_back(std::move(g));
    return static_cast<GateId>(gates.size() - 1);
  }

  GateId input(std::uint32_t automaton) {
    return add(Gate{GateKind::Input, automaton, false, {}});
  }
  GateId theta(std::uint32_t automaton) {
    return add(Gate{GateKind::Theta, automaton, false, {}});
  }
  GateId constant(bool v) { return add(Gate{GateKind::Const, 0, v, {}}); }
  GateId gate_not(GateId child) {
    return add(Gate{GateKind::Not, 0, false, {child}});
  }
  GateId gate_and(std::vector<GateId> children) {
    if (children.empty()) throw Error("AND gate needs at least one child");
    return add(Gate{GateKind::And, 0, false, std::move(children)});
  }
  GateId gate_or(std::vector<GateId> children) {
    if (children.empty()) throw Error("OR gate needs at least one child");
    return add(Gate{GateKind::Or, 0, false, std::move(children)});
  }
};

/// A local function: one root into a (possibly shared) gate pool.
struct Circuit {
  const GatePool* pool = nullptr;
  GateId root = 0;
};

/// Gates reachable from `root`, in DFS discovery order.
inline std::vector<GateId> reachable_gates(const GatePool& pool, GateId root) {
  std::vector<GateId> order;
  std::vector<bool> seen(pool.size(), false);
  std::vector<GateId> stack{root};
  while (!stack.empty()) {
    GateId id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = true;
    order.push_back(id);
    const Gate& g = pool[id];
    for (auto it = g.children.rbegin(); it != g.children.rend(); ++it)
      stack.push_back(*it);
  }
  return order;
}

/// Distinct automaton indices read through Input gates, sorted ascending.
inline std::vector<int> circuit_support(const GatePool& pool, GateId root) {
  std::vector<int> support;
  for (GateId id : reachable_gates(pool, root)) {
    const Gate& g = pool[id];
    if (g.kind == GateKind::Input) support.push_back(static_cast<int>(g.index));
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return support;
}

/// Distinct automaton indices referenced through Theta gates.
inline std::vector<int> theta_support(const GatePool& pool, GateId root) {
  std::vector<int> support;
  for (GateId id : reachable_gates(pool, root)) {
    const Gate& g = pool[id];
    if (g.kind == GateKind::Theta) support.push_back(static_cast<int>(g.index));
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return support;
}

inline bool has_theta(const GatePool& pool, GateId root) {
  for (GateId id : reachable_gates(pool, root))
    if (pool[id].kind == GateKind::Theta) return true;
  return false;
}

/// Copies the subgraph rooted at `root` from `src` into `dst`, preserving
/// internal sharing. `memo` maps already-copied gate ids and may be reused
/// across calls to keep gates shared between several copied roots.
inline GateId copy_subgraph(const GatePool& src, GateId root, GatePool& dst,
                            std::vector<GateId>& memo) {
  constexpr GateId kUnset = static_cast<GateId>(-1);
  if (memo.size() < src.size()) memo.resize(src.size(), kUnset);
  if (memo[root] != kUnset) return memo[root];

  // Post-order copy so children exist before their parent.
  std::vector<std::pair<GateId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (memo[id] != kUnset) continue;
    const Gate& g = src[id];
    if (!expanded) {
      stack.push_back({id, true});
      for (GateId c : g.children)
        if (memo[c] == kUnset) stack.push_back({c, false});
    } else {
      Gate copy = g;
      for (GateId& c : copy.children) c = memo[c];
      memo[id] = dst.add(std::move(copy));
    }
  }
  return memo[root];
}

namespace detail {

inline void append_gate_key(const GatePool& pool, GateId root, std::string& out) {
  const Gate& g = pool[root];
  switch (g.kind) {
    case GateKind::Input:
      out += 'x';
      out += std::to_string(g.index);
      return;
    case GateKind::Theta:
      out += 't';
      out += std::to_string(g.index);
      return;
    case GateKind::Const:
      out += g.value ? '1' : '0';
      return;
    case GateKind::Not:
      out += '!';
      append_gate_key(pool, g.children[0], out);
      return;
    case GateKind::And:
    case GateKind::Or:
      out += g.kind == GateKind::And ? '&' : '|';
      out += '(';
      for (std::size_t i = 0; i < g.children.size(); ++i) {
        if (i) out += ',';
        append_gate_key(pool, g.children[i], out);
      }
      out += ')';
      return;
  }
}

}  // namespace detail

/// Serializes the tree unfolding of a circuit. Two circuits with equal keys
/// are isomorphic as expression trees; sharing is deliberately ignored.
inline std::string circuit_tree_key(const GatePool& pool, GateId root) {
  std::string out;
  detail::append_gate_key(pool, root, out);
  return out;
}

}  // namespace ban
