/// @file network.hpp
/// @brief Automata networks and the update semantics F_X / F_Delta.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ban/circuit.hpp"
#include "ban/errors.hpp"
#include "ban/schedule.hpp"

namespace ban {

/// A configuration over {0,1}^n, bit-packed: bit i is automaton i's state.
using Config = std::uint64_t;

constexpr int kMaxNetworkSize = 62;

inline bool config_bit(Config x, int i) { return (x >> i) & 1u; }

inline Config with_config_bit(Config x, int i, bool v) {
  Config mask = Config{1} << i;
  return v ? (x | mask) : (x & ~mask);
}

/// Textual form: character j is automaton j's state, e.g. "101" for n=3.
inline std::string config_to_string(Config x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (config_bit(x, i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

inline Config config_from_string(std::string_view s) {
  if (s.size() > kMaxNetworkSize) throw Error("configuration too wide");
  Config x = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      x = with_config_bit(x, static_cast<int>(i), true);
    else if (s[i] != '0')
      throw Error("configuration must consist of 0s and 1s");
  }
  return x;
}

/// Spreadsheet-style automaton names for generated networks: a..z, a1, b1...
inline std::string auto_name(int i) {
  std::string name(1, static_cast<char>('a' + i % 26));
  if (i >= 26) name += std::to_string(i / 26);
  return name;
}

/// An automata network: n named automata, each with a circuit-encoded
/// local function. All circuits live in one shared gate pool.
struct AutomataNetwork {
  std::vector<std::string> names;
  GatePool pool;
  std::vector<GateId> outputs;  // root gate of f_i, one per automaton

  int size() const { return static_cast<int>(names.size()); }

  Circuit circuit(int i) const {
    return Circuit{&pool, outputs[static_cast<std::size_t>(i)]};
  }

  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool has_thetas() const {
    for (GateId root : outputs)
      if (has_theta(pool, root)) return true;
    return false;
  }

  /// Number of gates reachable from at least one local function.
  std::size_t live_gate_count() const {
    std::vector<bool> seen(pool.size(), false);
    std::size_t count = 0;
    std::vector<GateId> stack(outputs.begin(), outputs.end());
    while (!stack.empty()) {
      GateId id = stack.back();
      stack.pop_back();
      if (seen[id]) continue;
      seen[id] = true;
      ++count;
      for (GateId c : pool[id].children) stack.push_back(c);
    }
    return count;
  }

  /// Structural sanity: input indices in range, gate graph acyclic.
  /// Finished networks additionally contain no theta gates.
  void validate(bool allow_thetas = false) const {
    if (names.size() != outputs.size())
      throw Error("network has mismatched names and circuits");
    if (size() > kMaxNetworkSize) throw Error("network too large");
    enum { White, Gray, Black };
    std::vector<std::uint8_t> color(pool.size(), White);
    std::vector<std::pair<GateId, bool>> stack;
    for (GateId root : outputs) stack.push_back({root, false});
    while (!stack.empty()) {
      auto [id, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        color[id] = Black;
        continue;
      }
      if (color[id] == Black) continue;
      if (color[id] == Gray) throw Error("gate graph contains a cycle");
      color[id] = Gray;
      stack.push_back({id, true});
      const Gate& g = pool[id];
      switch (g.kind) {
        case GateKind::Input:
          if (g.index >= names.size())
            throw Error("input gate index out of range");
          break;
        case GateKind::Theta:
          if (!allow_thetas)
            throw Error("finished network contains a theta gate");
          if (g.index >= names.size())
            throw Error("theta gate index out of range");
          break;
        case GateKind::Const:
          break;
        case GateKind::Not:
          if (g.children.size() != 1) throw Error("NOT gate needs one child");
          break;
        case GateKind::And:
        case GateKind::Or:
          if (g.children.empty()) throw Error("AND/OR gate needs children");
          break;
      }
      for (GateId c : g.children) {
        if (c >= pool.size()) throw Error("gate child out of range");
        if (color[c] == Gray) throw Error("gate graph contains a cycle");
        if (color[c] == White) stack.push_back({c, false});
      }
    }
  }
};

/// Drops unreachable gates and renumbers the pool in a deterministic
/// (output-order DFS) layout. Preserves sharing.
inline void compact(AutomataNetwork& net) {
  GatePool fresh;
  std::vector<GateId> memo;
  std::vector<GateId> new_outputs;
  new_outputs.reserve(net.outputs.size());
  for (GateId root : net.outputs)
    new_outputs.push_back(copy_subgraph(net.pool, root, fresh, memo));
  net.pool = std::move(fresh);
  net.outputs = std::move(new_outputs);
}

/// Evaluates gates against configurations with a per-configuration memo, so
/// gates shared between local functions are computed once per step.
class Evaluator {
 public:
  explicit Evaluator(const AutomataNetwork& net) : net_(&net) {
    stamp_.assign(net.pool.size(), 0);
    value_.assign(net.pool.size(), 0);
  }

  /// Starts a fresh memo generation; call whenever the configuration changes.
  void begin() { ++epoch_; }

  bool eval(GateId root, Config x) {
    const GatePool& pool = net_->pool;
    stack_.clear();
    stack_.push_back(root);
    while (!stack_.empty()) {
      GateId id = stack_.back();
      if (stamp_[id] == epoch_) {
        stack_.pop_back();
        continue;
      }
      const Gate& g = pool[id];
      switch (g.kind) {
        case GateKind::Input:
          set(id, config_bit(x, static_cast<int>(g.index)));
          break;
        case GateKind::Theta:
          throw PreconditionError("transient circuit not evaluable");
        case GateKind::Const:
          set(id, g.value);
          break;
        case GateKind::Not: {
          GateId c = g.children[0];
          if (stamp_[c] == epoch_)
            set(id, !value_[c]);
          else
            stack_.push_back(c);
          break;
        }
        case GateKind::And:
        case GateKind::Or: {
          bool pending = false;
          for (GateId c : g.children)
            if (stamp_[c] != epoch_) {
              stack_.push_back(c);
              pending = true;
            }
          if (pending) break;
          bool acc = g.kind == GateKind::And;
          for (GateId c : g.children) {
            if (g.kind == GateKind::And)
              acc = acc && value_[c];
            else
              acc = acc || value_[c];
          }
          set(id, acc);
          break;
        }
      }
    }
    return value_[root] != 0;
  }

  /// F_X(x): updates the automata in `block`, leaves the rest untouched.
  Config apply_block(const std::vector<int>& block, Config x) {
    begin();
    Config out = x;
    for (int i : block) {
      if (i < 0 || i >= net_->size())
        throw PreconditionError("automaton index out of range");
      out = with_config_bit(out, i, eval(net_->outputs[i], x));
    }
    return out;
  }

  /// F_Delta(x): folds apply_block over one period of the schedule.
  Config apply_schedule(const UpdateSchedule& schedule, Config x) {
    schedule.validate(net_->size());
    Config cur = x;
    for (const auto& block : schedule.blocks) cur = apply_block(block, cur);
    return cur;
  }

 private:
  void set(GateId id, bool v) {
    stamp_[id] = epoch_;
    value_[id] = v ? 1 : 0;
    stack_.pop_back();
  }

  const AutomataNetwork* net_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint8_t> value_;
  std::vector<GateId> stack_;
  std::uint32_t epoch_ = 0;
};

/// f(x) for a single circuit. Convenience wrapper over Evaluator.
inline bool eval_circuit(const AutomataNetwork& net, int i, Config x) {
  Evaluator ev(net);
  ev.begin();
  return ev.eval(net.outputs[static_cast<std::size_t>(i)], x);
}

inline Config apply_block(const AutomataNetwork& net,
                          const std::vector<int>& block, Config x) {
  Evaluator ev(net);
  return ev.apply_block(block, x);
}

inline Config apply_schedule(const AutomataNetwork& net,
                             const UpdateSchedule& schedule, Config x) {
  Evaluator ev(net);
  return ev.apply_schedule(schedule, x);
}

/// Truth-table equality of f_i in `a` and f_j in `b`, enumerated over the
/// union of their supports.
inline bool same_local_function(const AutomataNetwork& a, int i,
                                const AutomataNetwork& b, int j,
                                bool* negated = nullptr) {
  std::vector<int> support = circuit_support(a.pool, a.outputs[i]);
  for (int v : circuit_support(b.pool, b.outputs[j])) support.push_back(v);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.size() > 24) throw CapExceededError("support too large");

  Evaluator ea(a), eb(b);
  bool all_equal = true, all_opposite = true;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << support.size()); ++m) {
    Config x = 0;
    for (std::size_t k = 0; k < support.size(); ++k)
      if ((m >> k) & 1) x = with_config_bit(x, support[k], true);
    ea.begin();
    eb.begin();
    bool va = ea.eval(a.outputs[i], x);
    bool vb = eb.eval(b.outputs[j], x);
    all_equal = all_equal && va == vb;
    all_opposite = all_opposite && va != vb;
    if (!all_equal && !all_opposite) break;
  }
  if (negated) *negated = !all_equal && all_opposite;
  return all_equal;
}

/// Same automata (names, order) and truth-table-equal local functions.
inline bool semantically_equal(const AutomataNetwork& a,
                               const AutomataNetwork& b) {
  if (a.names != b.names) return false;
  for (int i = 0; i < a.size(); ++i)
    if (!same_local_function(a, i, b, i)) return false;
  return true;
}

/// Name-aware structural key: equal keys mean the two networks are the same
/// abstract network up to gate-pool layout (expression-tree isomorphism).
inline std::string network_tree_key(const AutomataNetwork& net) {
  std::string key;
  for (int i = 0; i < net.size(); ++i) {
    key += net.names[static_cast<std::size_t>(i)];
    key += '=';
    key += circuit_tree_key(net.pool, net.outputs[static_cast<std::size_t>(i)]);
    key += ';';
  }
  return key;
}

}  // namespace ban
