// ban — command-line front end for the Boolean automata network toolkit.
//
// Subcommands wire parsing, transformation, dynamics, verification and
// generation into reproducible runs. Exit codes: 0 success, 2 parse error,
// 3 precondition failure, 4 cap exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ban/dynamics.hpp"
#include "ban/families.hpp"
#include "ban/io.hpp"
#include "ban/parallelize.hpp"
#include "ban/randomgen.hpp"
#include "ban/reduce.hpp"

namespace {

struct RunConfig {
  int cap_n = ban::kDefaultEnumerationCap;
  int cap_support = ban::kDefaultSupportCap;
  std::string format = "text";
  std::uint64_t seed = 1;
  int jobs = 1;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw ban::Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ban::AutomataNetwork load_network(const std::string& path) {
  std::string text = read_input(path);
  // Accept the JSON mirror transparently when the document looks like JSON.
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    if (c == '{') return ban::parse_json(text).network;
    break;
  }
  return ban::parse_network(text);
}

ban::UpdateSchedule load_schedule(const std::string& path,
                                  const ban::AutomataNetwork& net) {
  return ban::parse_schedule(read_input(path), net);
}

ban::UpdateSchedule schedule_or_parallel(const std::string& path,
                                         const ban::AutomataNetwork& net) {
  if (path.empty()) return ban::UpdateSchedule::parallel(net.size());
  return load_schedule(path, net);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stoi(item));
  return values;
}

std::vector<ban::Sign> parse_sign_list(const std::string& text) {
  std::vector<ban::Sign> signs;
  for (char c : text) {
    if (c == '+')
      signs.push_back(ban::Sign::Positive);
    else if (c == '-')
      signs.push_back(ban::Sign::Negative);
    else if (c != ',' && c != ' ')
      throw ban::Error(std::string("bad sign character '") + c + "'");
  }
  return signs;
}

nlohmann::json report_to_json(const ban::ReductionReport& report) {
  nlohmann::json j;
  j["initial_size"] = report.initial_size;
  j["final_size"] = report.final_size;
  j["merges"] = nlohmann::json::array();
  nlohmann::json witness = nlohmann::json::object();
  for (const auto& m : report.merges) {
    j["merges"].push_back({{"removed", m.removed},
                           {"kept", m.kept},
                           {"g", ban::unary_map_name(m.map)}});
    witness[m.removed] = {{"kept", m.kept}, {"g", ban::unary_map_name(m.map)}};
  }
  j["pruned"] = report.pruned;
  for (const auto& p : report.pruned) witness[p] = "pruned";
  j["witness"] = witness;
  j["warnings"] = report.warnings;
  return j;
}

void print_reduction(const ban::AutomataNetwork& out,
                     const ban::ReductionReport& report, const RunConfig& cfg,
                     const std::optional<std::string>& verify_line) {
  if (cfg.format == "json") {
    nlohmann::json j = ban::to_json({out, std::nullopt});
    j["report"] = report_to_json(report);
    if (verify_line) j["verified"] = *verify_line;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << ban::emit_network(out);
  std::cout << "# reduced " << report.initial_size << " -> "
            << report.final_size << " automata\n";
  for (const auto& m : report.merges)
    std::cout << "# merge " << m.removed << " -> " << m.kept << " ("
              << ban::unary_map_name(m.map) << ")\n";
  for (const auto& p : report.pruned) std::cout << "# prune " << p << "\n";
  for (const auto& w : report.warnings) std::cout << "# warning: " << w << "\n";
  if (verify_line) std::cout << "# " << *verify_line << "\n";
}

std::string limit_summary(const ban::LimitDynamics& lim) {
  std::string out;
  if (lim.cycle_count() == 1) {
    out = "1 cycle: length " + std::to_string(lim.signature[0]);
  } else {
    out = std::to_string(lim.cycle_count()) + " cycles: lengths ";
    for (std::size_t i = 0; i < lim.signature.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(lim.signature[i]);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean automata network toolkit"};
  app.require_subcommand(0, 1);
  RunConfig cfg;
  app.add_option("--cap-n", cfg.cap_n, "Enumeration cap for dynamics (default 20)");
  app.add_option("--cap-support", cfg.cap_support,
                 "Support cap for influence/equivalence checks (default 20)");
  app.add_option("--format", cfg.format, "Output format: text|json|dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized generation");
  app.add_option("--jobs", cfg.jobs, "Worker threads for dynamics enumeration");

  struct {
    std::string net, sched, net_b, sched_a, sched_b;
    bool verify = false, hash_cons = false, fixpoint_prune = false;
    int length = 1;
    std::string cycles, sizes, signs;
    int tangent = 0;
    bool random = false;
    int max_cycles = 3, max_length = 6, max_tangent = 2, max_size = 5;
  } opt;

  auto* parallelize = app.add_subcommand(
      "parallelize", "Rewrite (network, block-sequential schedule) into an "
                     "equivalent parallel network");
  parallelize->add_option("network", opt.net)->required();
  parallelize->add_option("schedule", opt.sched)->required();
  parallelize->add_flag("--verify", opt.verify,
                        "Check full-dynamics equality exhaustively");
  parallelize->add_flag("--hash-cons", opt.hash_cons,
                        "Deduplicate structurally identical gates");

  auto* reduce = app.add_subcommand(
      "reduce", "Parallelize if a schedule is given, then merge unary-"
                "equivalent automata and prune influence-less ones");
  reduce->add_option("network", opt.net)->required();
  reduce->add_option("schedule", opt.sched);
  reduce->add_flag("--verify", opt.verify, "Check limit-signature equality");

  auto* reduce_tc = app.add_subcommand(
      "reduce-tc", "Tangential-cycles reduction preserving the TC shape");
  reduce_tc->add_option("network", opt.net)->required();
  reduce_tc->add_option("schedule", opt.sched)->required();
  reduce_tc->add_flag("--verify", opt.verify, "Check limit-signature equality");
  reduce_tc->add_flag("--fixpoint-prune", opt.fixpoint_prune,
                      "Iterate the prune pass to a fixpoint");

  auto* verify = app.add_subcommand(
      "verify", "Compare (limit) dynamics of two scheduled networks");
  verify->add_option("network-a", opt.net)->required();
  verify->add_option("network-b", opt.net_b)->required();
  verify->add_option("--sched-a", opt.sched_a, "Schedule for A (default parallel)");
  verify->add_option("--sched-b", opt.sched_b, "Schedule for B (default parallel)");

  auto* limit = app.add_subcommand("limit", "Limit cycles and signature");
  limit->add_option("network", opt.net)->required();
  limit->add_option("--sched", opt.sched, "Schedule (default parallel)");

  auto* dynamics = app.add_subcommand("dynamics",
                                      "Full successor graph (n <= 10)");
  dynamics->add_option("network", opt.net)->required();
  dynamics->add_option("--sched", opt.sched, "Schedule (default parallel)");

  auto* count = app.add_subcommand("count", "Count limit cycles of one length");
  count->add_option("network", opt.net)->required();
  count->add_option("--sched", opt.sched, "Schedule (default parallel)");
  count->add_option("--length", opt.length, "Cycle length to count")->required();

  auto* dot = app.add_subcommand(
      "dot", "Interaction digraph in DOT; labeled update digraph with --sched");
  dot->add_option("network", opt.net)->required();
  dot->add_option("--sched", opt.sched, "Schedule for a labeled update digraph");

  auto* gen = app.add_subcommand("gen", "Generate family networks");
  gen->require_subcommand(1);
  auto* gen_tc = gen->add_subcommand("tc", "Tangential cycles");
  gen_tc->add_option("--cycles", opt.cycles, "Cycle lengths, e.g. 4,3,1");
  gen_tc->add_option("--tangent", opt.tangent, "Tangent length (default 0)");
  gen_tc->add_option("--signs", opt.signs, "Cycle signs, e.g. +,-,+ (default all +)");
  gen_tc->add_flag("--random", opt.random, "Generate a random spec from --seed");
  gen_tc->add_option("--max-cycles", opt.max_cycles);
  gen_tc->add_option("--max-len", opt.max_length);
  gen_tc->add_option("--max-tangent", opt.max_tangent);
  auto* gen_dc = gen->add_subcommand("dc", "Disjunctive double cycle");
  gen_dc->add_option("--sizes", opt.sizes, "Cycle sizes, e.g. 3,4");
  gen_dc->add_option("--signs", opt.signs, "Cycle signs, e.g. +,- (default +,+)");
  gen_dc->add_flag("--random", opt.random, "Generate a random spec from --seed");
  gen_dc->add_option("--max-size", opt.max_size);
  auto* gen_cycle = gen->add_subcommand("cycle", "Single automata cycle");
  gen_cycle->add_option("--length", opt.length, "Cycle length")->required();
  gen_cycle->add_option("--signs", opt.signs, "Edge signs (default all +)");
  auto* gen_sched = gen->add_subcommand(
      "sched", "Random block-sequential schedule for a network");
  gen_sched->add_option("network", opt.net)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ban::Rng rng(cfg.seed);

    if (parallelize->parsed()) {
      auto net = load_network(opt.net);
      auto sched = load_schedule(opt.sched, net);
      ban::ParallelizeStats stats;
      auto out = ban::parallelize(net, sched, cfg.cap_support, &stats,
                                  opt.hash_cons);
      std::optional<std::string> note;
      if (opt.verify) {
        auto before = ban::full_dynamics(net, sched, cfg.cap_n, cfg.jobs);
        auto after = ban::full_dynamics(
            out, ban::UpdateSchedule::parallel(out.size()), cfg.cap_n, cfg.jobs);
        if (before.successor != after.successor)
          throw ban::Error("verification failed: dynamics differ");
        note = "dynamics equal";
      }
      if (cfg.format == "json") {
        nlohmann::json j = ban::to_json({out, std::nullopt});
        j["gates"] = {{"input", stats.input_gate_count},
                      {"output", stats.output_gate_count}};
        if (note) j["verified"] = *note;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << ban::emit_network(out);
        if (note) std::cout << "# " << *note << "\n";
      }
      return 0;
    }

    if (reduce->parsed() || reduce_tc->parsed()) {
      auto net = load_network(opt.net);
      ban::AutomataNetwork out;
      ban::ReductionReport report;
      ban::UpdateSchedule input_sched = schedule_or_parallel(opt.sched, net);
      if (reduce_tc->parsed()) {
        auto sched = load_schedule(opt.sched, net);
        std::tie(out, report) =
            ban::reduce_tc(net, sched, cfg.cap_support, opt.fixpoint_prune);
      } else {
        ban::AutomataNetwork parallel =
            opt.sched.empty() ? net
                              : ban::parallelize(net, input_sched, cfg.cap_support);
        std::tie(out, report) = ban::reduce_parallel(parallel, cfg.cap_support);
      }
      std::optional<std::string> note;
      if (opt.verify) {
        auto before = ban::limit_dynamics(net, input_sched, cfg.cap_n, cfg.jobs);
        auto after =
            ban::limit_dynamics(out, ban::UpdateSchedule::parallel(out.size()),
                                cfg.cap_n, cfg.jobs);
        if (!ban::limit_isomorphic(before, after))
          throw ban::Error("verification failed: signatures differ");
        note = "signature match " + ban::signature_to_string(after.signature);
      }
      print_reduction(out, report, cfg, note);
      return 0;
    }

    if (verify->parsed()) {
      auto net_a = load_network(opt.net);
      auto net_b = load_network(opt.net_b);
      auto sched_a = schedule_or_parallel(opt.sched_a, net_a);
      auto sched_b = schedule_or_parallel(opt.sched_b, net_b);
      auto lim_a = ban::limit_dynamics(net_a, sched_a, cfg.cap_n, cfg.jobs);
      auto lim_b = ban::limit_dynamics(net_b, sched_b, cfg.cap_n, cfg.jobs);
      bool iso = ban::limit_isomorphic(lim_a, lim_b);
      std::optional<bool> dynamics_equal;
      if (net_a.names == net_b.names) {
        auto dyn_a = ban::full_dynamics(net_a, sched_a, cfg.cap_n, cfg.jobs);
        auto dyn_b = ban::full_dynamics(net_b, sched_b, cfg.cap_n, cfg.jobs);
        dynamics_equal = dyn_a.successor == dyn_b.successor;
      }
      if (cfg.format == "json") {
        nlohmann::json j;
        j["limit_isomorphic"] = iso;
        j["signature_a"] = lim_a.signature;
        j["signature_b"] = lim_b.signature;
        if (dynamics_equal) j["dynamics_equal"] = *dynamics_equal;
        std::cout << j.dump(2) << "\n";
      } else {
        if (iso)
          std::cout << "limit-isomorphic: yes, signature "
                    << ban::signature_to_string(lim_a.signature) << "\n";
        else
          std::cout << "limit-isomorphic: no, signatures "
                    << ban::signature_to_string(lim_a.signature) << " vs "
                    << ban::signature_to_string(lim_b.signature) << "\n";
        if (dynamics_equal)
          std::cout << "dynamics-equal: " << (*dynamics_equal ? "yes" : "no")
                    << "\n";
      }
      return 0;
    }

    if (limit->parsed()) {
      auto net = load_network(opt.net);
      auto sched = schedule_or_parallel(opt.sched, net);
      auto lim = ban::limit_dynamics(net, sched, cfg.cap_n, cfg.jobs);
      if (cfg.format == "json") {
        nlohmann::json j;
        j["signature"] = lim.signature;
        j["cycles"] = nlohmann::json::array();
        for (const auto& cycle : lim.cycles) {
          nlohmann::json c = nlohmann::json::array();
          for (ban::Config x : cycle)
            c.push_back(ban::config_to_string(x, lim.n));
          j["cycles"].push_back(c);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << limit_summary(lim) << "\n";
        for (std::size_t i = 0; i < lim.cycles.size(); ++i) {
          std::cout << "cycle " << i + 1 << " (length " << lim.cycles[i].size()
                    << "):";
          for (ban::Config x : lim.cycles[i])
            std::cout << " " << ban::config_to_string(x, lim.n);
          std::cout << "\n";
        }
        std::cout << "signature " << ban::signature_to_string(lim.signature)
                  << "\n";
      }
      return 0;
    }

    if (dynamics->parsed()) {
      auto net = load_network(opt.net);
      if (net.size() > 10)
        throw ban::PreconditionError(
            "dynamics export is limited to networks with n <= 10");
      auto sched = schedule_or_parallel(opt.sched, net);
      auto dyn = ban::full_dynamics(net, sched, cfg.cap_n, cfg.jobs);
      if (cfg.format == "json") {
        nlohmann::json succ = nlohmann::json::object();
        for (ban::Config x = 0; x < dyn.config_count(); ++x)
          succ[ban::config_to_string(x, dyn.n)] =
              ban::config_to_string(dyn.successor[x], dyn.n);
        nlohmann::json j;
        j["n"] = dyn.n;
        j["successor"] = succ;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << ban::emit_dot(dyn);
      }
      return 0;
    }

    if (count->parsed()) {
      auto net = load_network(opt.net);
      auto sched = schedule_or_parallel(opt.sched, net);
      std::cout << ban::count_limit_cycles(net, sched, opt.length, cfg.cap_n,
                                           cfg.jobs)
                << "\n";
      return 0;
    }

    if (dot->parsed()) {
      auto net = load_network(opt.net);
      if (opt.sched.empty()) {
        std::cout << ban::emit_dot(ban::interaction_digraph(net, cfg.cap_support),
                                   net.names);
      } else {
        auto sched = load_schedule(opt.sched, net);
        std::cout << ban::emit_dot(ban::update_digraph(net, sched, cfg.cap_support),
                                   net.names);
      }
      return 0;
    }

    if (gen->parsed()) {
      if (gen_tc->parsed()) {
        ban::TCSpec spec;
        if (opt.random) {
          spec = ban::random_tc_spec(rng, opt.max_cycles, opt.max_length,
                                     opt.max_tangent);
        } else {
          if (opt.cycles.empty())
            throw ban::PreconditionError("gen tc needs --cycles or --random");
          std::vector<int> lengths = parse_int_list(opt.cycles);
          std::vector<ban::Sign> signs(lengths.size(), ban::Sign::Positive);
          if (!opt.signs.empty()) signs = parse_sign_list(opt.signs);
          if (signs.size() != lengths.size())
            throw ban::PreconditionError("need one sign per cycle");
          spec.cycle_lengths = lengths;
          spec.cycle_signs = signs;
          spec.tangent_length = opt.tangent;
          for (std::size_t i = 0; i < lengths.size(); ++i)
            spec.edge_sign_layout.push_back(
                ban::canonical_edge_signs(lengths[i], signs[i]));
        }
        std::cout << ban::emit_network(ban::build_tc(spec));
      } else if (gen_dc->parsed()) {
        ban::DCSpec spec;
        if (opt.random) {
          spec = ban::random_dc_spec(rng, opt.max_size);
        } else {
          if (opt.sizes.empty())
            throw ban::PreconditionError("gen dc needs --sizes or --random");
          std::vector<int> sizes = parse_int_list(opt.sizes);
          std::vector<ban::Sign> signs{ban::Sign::Positive, ban::Sign::Positive};
          if (!opt.signs.empty()) signs = parse_sign_list(opt.signs);
          if (sizes.size() != 2 || signs.size() != 2)
            throw ban::PreconditionError("gen dc needs two sizes and two signs");
          spec = ban::DCSpec{signs[0], signs[1], sizes[0], sizes[1]};
        }
        std::cout << ban::emit_network(ban::build_double_cycle(spec));
      } else if (gen_cycle->parsed()) {
        std::vector<ban::Sign> signs(static_cast<std::size_t>(opt.length),
                                     ban::Sign::Positive);
        if (!opt.signs.empty()) signs = parse_sign_list(opt.signs);
        std::cout << ban::emit_network(ban::build_cycle(opt.length, signs));
      } else if (gen_sched->parsed()) {
        auto net = load_network(opt.net);
        auto sched = ban::random_block_sequential_schedule(rng, net.size());
        std::cout << ban::emit_schedule(sched, net) << "\n";
      }
      return 0;
    }

    std::cout << app.help();
    return 0;
  } catch (const ban::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ban::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ban::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
