/// @file io.hpp
/// @brief Parsing and serialization: the line-oriented network DSL, a JSON
/// mirror, and DOT export.
///
/// Grammar, one `name = expr` statement per line:
///   expr   ::= term ('|' term)*
///   term   ::= factor ('&' factor)*
///   factor ::= '!' factor | '(' expr ')' | name | '0' | '1'
/// Comments run from '#' to end of line. Schedules are whitespace-separated
/// `{name,name,...}` blocks.

#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ban/dynamics.hpp"
#include "ban/errors.hpp"
#include "ban/graphs.hpp"
#include "ban/network.hpp"
#include "ban/schedule.hpp"

namespace ban {

struct NetworkDocument {
  AutomataNetwork network;
  std::optional<UpdateSchedule> schedule;
};

namespace detail {

inline bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Cursor over one logical line of DSL text.
struct LineLexer {
  std::string_view text;
  int line;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_space();
    return pos >= text.size();
  }
  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }
  int column() const { return static_cast<int>(pos) + 1; }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(line, column(), msg);
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!accept(c)) fail("expected " + what);
  }

  std::string name() {
    skip_space();
    if (pos >= text.size() || !is_name_start(text[pos]))
      fail("expected a name");
    std::size_t start = pos;
    while (pos < text.size() && is_name_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }
};

struct ExprParser {
  LineLexer& lex;
  const AutomataNetwork& net;
  GatePool& pool;

  GateId parse_expr() {
    std::vector<GateId> terms{parse_term()};
    while (lex.accept('|')) terms.push_back(parse_term());
    return terms.size() == 1 ? terms[0] : pool.gate_or(std::move(terms));
  }

  GateId parse_term() {
    std::vector<GateId> factors{parse_factor()};
    while (lex.accept('&')) factors.push_back(parse_factor());
    return factors.size() == 1 ? factors[0] : pool.gate_and(std::move(factors));
  }

  GateId parse_factor() {
    char c = lex.peek();
    if (c == '!') {
      ++lex.pos;
      return pool.gate_not(parse_factor());
    }
    if (c == '(') {
      ++lex.pos;
      GateId inner = parse_expr();
      lex.expect(')', "')'");
      return inner;
    }
    if (c == '0' || c == '1') {
      ++lex.pos;
      if (lex.pos < lex.text.size() && is_name_char(lex.text[lex.pos]))
        lex.fail("names may not start with a digit");
      return pool.constant(c == '1');
    }
    if (is_name_start(c)) {
      int col = lex.column();
      std::string id = lex.name();
      int idx = net.index_of(id);
      if (idx < 0) throw ParseError(lex.line, col, "undeclared variable '" + id + "'");
      return pool.input(static_cast<std::uint32_t>(idx));
    }
    lex.fail("expected an expression");
  }
};

inline std::string_view strip_comment(std::string_view line) {
  std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t'))
    line.remove_suffix(1);
  return line;
}

inline std::vector<std::pair<int, std::string_view>> logical_lines(
    std::string_view text) {
  std::vector<std::pair<int, std::string_view>> lines;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    std::string_view raw = strip_comment(text.substr(start, end - start));
    bool blank = true;
    for (char c : raw)
      if (c != ' ' && c != '\t') blank = false;
    if (!blank) lines.push_back({lineno, raw});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

}  // namespace detail

/// Parses a network document. Two passes: declarations first, so local
/// functions may reference automata declared further down.
inline AutomataNetwork parse_network(std::string_view text) {
  auto lines = detail::logical_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty network document");

  AutomataNetwork net;
  std::vector<detail::LineLexer> pending;
  for (auto [lineno, raw] : lines) {
    detail::LineLexer lex{raw, lineno};
    std::string name = lex.name();
    if (net.index_of(name) >= 0)
      throw ParseError(lineno, 1, "duplicate automaton name '" + name + "'");
    lex.expect('=', "'='");
    net.names.push_back(std::move(name));
    pending.push_back(lex);
  }

  for (auto& lex : pending) {
    detail::ExprParser parser{lex, net, net.pool};
    net.outputs.push_back(parser.parse_expr());
    if (!lex.at_end()) lex.fail("trailing characters after expression");
  }
  net.validate();
  return net;
}

/// Parses `{name,...} {name,...} ...` against an already-parsed network.
inline UpdateSchedule parse_schedule(std::string_view text,
                                     const AutomataNetwork& net) {
  UpdateSchedule schedule;
  for (auto [lineno, raw] : detail::logical_lines(text)) {
    detail::LineLexer lex{raw, lineno};
    while (!lex.at_end()) {
      lex.expect('{', "'{'");
      std::vector<int> block;
      do {
        int col = lex.column();
        std::string id = lex.name();
        int idx = net.index_of(id);
        if (idx < 0)
          throw ParseError(lineno, col, "unknown automaton '" + id + "'");
        for (int existing : block)
          if (existing == idx)
            throw ParseError(lineno, col, "duplicate automaton '" + id + "' in block");
        block.push_back(idx);
      } while (lex.accept(','));
      lex.expect('}', "'}'");
      if (block.empty()) throw ParseError(lineno, lex.column(), "empty block");
      schedule.blocks.push_back(std::move(block));
    }
  }
  if (schedule.blocks.empty()) throw ParseError(1, 1, "empty schedule");
  return schedule;
}

namespace detail {

enum class ExprContext { Top, InOr, InAnd, InNot };

inline void emit_expr(const AutomataNetwork& net, GateId id, ExprContext ctx,
                      bool allow_theta, std::string& out) {
  const Gate& g = net.pool[id];
  switch (g.kind) {
    case GateKind::Input:
      out += net.names[g.index];
      return;
    case GateKind::Theta:
      if (!allow_theta)
        throw PreconditionError("cannot emit a transient circuit");
      out += '@';
      out += net.names[g.index];
      return;
    case GateKind::Const:
      out += g.value ? '1' : '0';
      return;
    case GateKind::Not:
      out += '!';
      emit_expr(net, g.children[0], ExprContext::InNot, allow_theta, out);
      return;
    case GateKind::And:
    case GateKind::Or: {
      if (g.children.size() == 1) {
        // Unary AND/OR is the identity; print the child directly.
        emit_expr(net, g.children[0], ctx, allow_theta, out);
        return;
      }
      bool is_or = g.kind == GateKind::Or;
      // Parenthesize whenever the surrounding context binds at least as
      // tightly, so reparsing rebuilds the same tree.
      bool parens = is_or ? ctx != ExprContext::Top
                          : ctx == ExprContext::InAnd || ctx == ExprContext::InNot;
      if (parens) out += '(';
      for (std::size_t i = 0; i < g.children.size(); ++i) {
        if (i) out += is_or ? " | " : " & ";
        emit_expr(net, g.children[i], is_or ? ExprContext::InOr : ExprContext::InAnd,
                  allow_theta, out);
      }
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace detail

/// Canonical expression text for one local function.
inline std::string emit_expression(const AutomataNetwork& net, int i,
                                   bool allow_theta = false) {
  std::string out;
  detail::emit_expr(net, net.outputs[static_cast<std::size_t>(i)],
                    detail::ExprContext::Top, allow_theta, out);
  return out;
}

/// One `name = expr` line per automaton. parse(emit(net)) rebuilds the same
/// abstract network for tree-shaped circuits. `allow_theta` renders theta
/// gates as `@name` for debugging; that form is not parseable.
inline std::string emit_network(const AutomataNetwork& net,
                                bool allow_theta = false) {
  std::string out;
  for (int i = 0; i < net.size(); ++i) {
    out += net.names[static_cast<std::size_t>(i)];
    out += " = ";
    out += emit_expression(net, i, allow_theta);
    out += '\n';
  }
  return out;
}

inline std::string emit_schedule(const UpdateSchedule& schedule,
                                 const AutomataNetwork& net) {
  std::string out;
  for (std::size_t b = 0; b < schedule.blocks.size(); ++b) {
    if (b) out += ' ';
    out += '{';
    for (std::size_t i = 0; i < schedule.blocks[b].size(); ++i) {
      if (i) out += ',';
      out += net.names[static_cast<std::size_t>(schedule.blocks[b][i])];
    }
    out += '}';
  }
  return out;
}

// --- DOT export ---------------------------------------------------------

inline std::string emit_dot(const InteractionDigraph& g,
                            const std::vector<std::string>& names) {
  std::string out = "digraph interaction {\n";
  for (int i = 0; i < g.n; ++i) out += "  " + names[i] + ";\n";
  for (const auto& [u, v] : g.edges)
    out += "  " + names[u] + " -> " + names[v] + ";\n";
  out += "}\n";
  return out;
}

inline std::string emit_dot(const UpdateDigraph& g,
                            const std::vector<std::string>& names) {
  std::string out = "digraph update {\n";
  for (int i = 0; i < g.base.n; ++i) out += "  " + names[i] + ";\n";
  for (std::size_t e = 0; e < g.base.edges.size(); ++e) {
    const auto& [u, v] = g.base.edges[e];
    const char* label = g.labels[e] == EdgeLabel::LT ? "<" : ">=";
    out += "  " + names[u] + " -> " + names[v] + " [label=\"" + label + "\"];\n";
  }
  out += "}\n";
  return out;
}

inline std::string emit_dot(const DynamicsGraph& dyn) {
  std::string out = "digraph dynamics {\n";
  for (Config x = 0; x < dyn.config_count(); ++x)
    out += "  \"" + config_to_string(x, dyn.n) + "\" -> \"" +
           config_to_string(dyn.successor[x], dyn.n) + "\";\n";
  out += "}\n";
  return out;
}

// --- JSON mirror ---------------------------------------------------------

inline nlohmann::json to_json(const NetworkDocument& doc) {
  nlohmann::json j;
  j["automata"] = nlohmann::json::array();
  for (int i = 0; i < doc.network.size(); ++i)
    j["automata"].push_back({{"name", doc.network.names[i]},
                             {"function", emit_expression(doc.network, i)}});
  if (doc.schedule) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& block : doc.schedule->blocks) {
      nlohmann::json names = nlohmann::json::array();
      for (int i : block) names.push_back(doc.network.names[i]);
      blocks.push_back(names);
    }
    j["schedule"] = blocks;
  }
  return j;
}

inline std::string emit_json(const NetworkDocument& doc) {
  return to_json(doc).dump(2) + "\n";
}

inline NetworkDocument parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, 1, std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("automata") || !j["automata"].is_array())
    throw ParseError(1, 1, "JSON document lacks an \"automata\" array");

  // Rebuild through the DSL parser so both formats share one validation path.
  std::string dsl;
  for (const auto& entry : j["automata"]) {
    if (!entry.contains("name") || !entry.contains("function"))
      throw ParseError(1, 1, "automaton entries need \"name\" and \"function\"");
    dsl += entry["name"].get<std::string>();
    dsl += " = ";
    dsl += entry["function"].get<std::string>();
    dsl += '\n';
  }

  NetworkDocument doc;
  doc.network = parse_network(dsl);
  if (j.contains("schedule")) {
    std::string sched;
    for (const auto& block : j["schedule"]) {
      sched += '{';
      for (std::size_t i = 0; i < block.size(); ++i) {
        if (i) sched += ',';
        sched += block[i].get<std::string>();
      }
      sched += "} ";
    }
    doc.schedule = parse_schedule(sched, doc.network);
  }
  return doc;
}

}  // namespace ban
