#include <algorithm>
#include <map>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "ban/dynamics.hpp"
#include "ban/families.hpp"
#include "ban/io.hpp"
#include "ban/randomgen.hpp"

using namespace ban;

namespace {

AutomataNetwork example1() {
  return parse_network("a = !b | c\nb = a\nc = !b\n");
}

// Independent limit-dynamics oracle: x is on a cycle iff successor^t(x) = x
// for some 1 <= t <= 2^n; cycle lengths are the minimal such t. Deliberately
// avoids the engine's three-color walk.
std::multiset<int> oracle_signature(const DynamicsGraph& dyn) {
  std::multiset<int> lengths;
  std::set<Config> seen_cycles;
  for (Config x = 0; x < dyn.config_count(); ++x) {
    Config cur = x;
    std::size_t steps = 0;
    bool on_cycle = false;
    for (std::size_t t = 1; t <= dyn.config_count(); ++t) {
      cur = dyn.successor[cur];
      if (cur == x) {
        on_cycle = true;
        steps = t;
        break;
      }
    }
    if (!on_cycle) continue;
    // Count each cycle once, keyed by its smallest configuration.
    Config smallest = x;
    cur = x;
    for (std::size_t t = 0; t < steps; ++t) {
      cur = dyn.successor[cur];
      smallest = std::min(smallest, cur);
    }
    if (seen_cycles.insert(smallest).second)
      lengths.insert(static_cast<int>(steps));
  }
  return lengths;
}

}  // namespace

TEST_CASE("full dynamics of the running example under pi") {
  auto net = example1();
  auto dyn = full_dynamics(net, UpdateSchedule::parallel(3));
  std::map<std::string, std::string> expected{
      {"000", "101"}, {"001", "101"}, {"010", "000"}, {"011", "100"},
      {"100", "111"}, {"101", "111"}, {"110", "010"}, {"111", "110"}};
  for (const auto& [from, to] : expected)
    CHECK(dyn.successor[config_from_string(from)] == config_from_string(to));
}

TEST_CASE("full dynamics under the sequential schedule") {
  auto net = example1();
  auto dyn = full_dynamics(net, parse_schedule("{a} {b} {c}", net));
  CHECK(dyn.successor[config_from_string("001")] == config_from_string("110"));
  CHECK(dyn.successor[config_from_string("110")] == config_from_string("001"));
}

TEST_CASE("identity network maps every configuration to itself") {
  auto net = parse_network("a = a\nb = b\nc = c\nd = d\n");
  auto dyn = full_dynamics(net, UpdateSchedule::parallel(4));
  for (Config x = 0; x < 16; ++x) CHECK(dyn.successor[x] == x);
  CHECK(limit_dynamics(net, UpdateSchedule::parallel(4)).cycle_count() == 16);
}

TEST_CASE("limit dynamics of the running example") {
  auto net = example1();
  auto par = limit_dynamics(net, UpdateSchedule::parallel(3));
  REQUIRE(par.cycle_count() == 1);
  CHECK(par.signature == std::vector<int>{5});
  std::vector<Config> expected;
  for (const char* s : {"000", "101", "111", "110", "010"})
    expected.push_back(config_from_string(s));
  CHECK(par.cycles[0] == expected);

  auto seq = limit_dynamics(net, parse_schedule("{a} {b} {c}", net));
  CHECK(seq.signature == std::vector<int>{2});
  std::vector<Config> two{config_from_string("110"), config_from_string("001")};
  CHECK(seq.cycles[0] == two);  // canonical rotation starts at the smallest
}

TEST_CASE("constant network has a single fixed point") {
  auto net = parse_network("a = 1\nb = 0\n");
  auto lim = limit_dynamics(net, UpdateSchedule::parallel(2));
  REQUIRE(lim.signature == std::vector<int>{1});
  CHECK(lim.cycles[0] == std::vector<Config>{config_from_string("10")});
}

TEST_CASE("signatures and isomorphism") {
  LimitDynamics a, b, c;
  a.signature = {5};
  b.signature = {5};
  c.signature = {1, 1};
  CHECK(limit_isomorphic(a, b));
  LimitDynamics two;
  two.signature = {2};
  CHECK_FALSE(limit_isomorphic(two, c));  // same node count, different shape
}

TEST_CASE("count_limit_cycles") {
  auto net = example1();
  CHECK(count_limit_cycles(net, UpdateSchedule::parallel(3), 5) == 1);
  CHECK(count_limit_cycles(net, UpdateSchedule::parallel(3), 1) == 0);

  auto cycle4 = build_cycle(4, std::vector<Sign>(4, Sign::Positive));
  CHECK(count_limit_cycles(cycle4, UpdateSchedule::parallel(4), 1) == 2);
}

TEST_CASE("golden census of a small double cycle") {
  // DC(+,+,2,3) under pi: exactly the two constant fixed points. Frozen
  // from the naive oracle's first run, cross-checked here on every run.
  auto net = build_double_cycle(DCSpec{Sign::Positive, Sign::Positive, 2, 3});
  REQUIRE(net.size() == 4);
  auto lim = limit_dynamics(net, UpdateSchedule::parallel(4));
  auto dyn = full_dynamics(net, UpdateSchedule::parallel(4));
  std::multiset<int> engine(lim.signature.begin(), lim.signature.end());
  CHECK(oracle_signature(dyn) == engine);
  CHECK(lim.signature == std::vector<int>{1, 1});
  CHECK(lim.cycles[0] == std::vector<Config>{config_from_string("0000")});
  CHECK(lim.cycles[1] == std::vector<Config>{config_from_string("1111")});
  CHECK(count_limit_cycles(net, UpdateSchedule::parallel(4), 1) == 2);
  CHECK(count_limit_cycles(net, UpdateSchedule::parallel(4), 2) == 0);
}

TEST_CASE("engine agrees with the naive on-cycle oracle") {
  Rng rng(505);
  for (int round = 0; round < 40; ++round) {
    int n = detail::uniform_int(rng, 1, 7);
    auto net = random_network(rng, n);
    auto sched = random_block_sequential_schedule(rng, n);
    auto dyn = full_dynamics(net, sched);
    auto lim = extract_limit_cycles(dyn);

    std::multiset<int> engine(lim.signature.begin(), lim.signature.end());
    CHECK(engine == oracle_signature(dyn));

    // Limit configurations are exactly the on-cycle configurations.
    std::set<Config> on_cycles;
    for (const auto& cycle : lim.cycles)
      on_cycles.insert(cycle.begin(), cycle.end());
    for (const auto& cycle : lim.cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        CHECK(dyn.successor[cycle[i]] == cycle[(i + 1) % cycle.size()]);
        CHECK(std::count(cycle.begin(), cycle.end(), cycle[i]) == 1);
      }
    }
    for (Config x = 0; x < dyn.config_count(); ++x) {
      Config cur = x;
      bool returns = false;
      for (std::size_t t = 1; t <= dyn.config_count(); ++t) {
        cur = dyn.successor[cur];
        if (cur == x) {
          returns = true;
          break;
        }
      }
      CHECK(on_cycles.count(x) == (returns ? 1u : 0u));
    }
  }
}

TEST_CASE("signature is invariant under automaton renaming") {
  Rng rng(99);
  for (int round = 0; round < 10; ++round) {
    int n = detail::uniform_int(rng, 2, 6);
    auto net = random_network(rng, n);

    // Rotate the indices by one.
    AutomataNetwork rotated;
    rotated.pool = net.pool;
    for (int i = 0; i < n; ++i) {
      int src = (i + 1) % n;
      rotated.names.push_back(net.names[static_cast<std::size_t>(src)]);
      rotated.outputs.push_back(net.outputs[static_cast<std::size_t>(src)]);
    }
    for (Gate& g : rotated.pool.gates)
      if (g.kind == GateKind::Input)
        g.index = static_cast<std::uint32_t>((static_cast<int>(g.index) + n - 1) % n);

    auto sig_a = limit_dynamics(net, UpdateSchedule::parallel(n)).signature;
    auto sig_b = limit_dynamics(rotated, UpdateSchedule::parallel(n)).signature;
    CHECK(sig_a == sig_b);
  }
}

TEST_CASE("worker partitioning matches the sequential sweep") {
  Rng rng(3);
  auto net = random_network(rng, 11);
  auto sched = random_block_sequential_schedule(rng, 11);
  auto seq = full_dynamics(net, sched, kDefaultEnumerationCap, 1);
  auto par = full_dynamics(net, sched, kDefaultEnumerationCap, 4);
  CHECK(seq.successor == par.successor);
}

TEST_CASE("enumeration cap refuses oversized networks") {
  Rng rng(8);
  auto net = random_network(rng, 6);
  CHECK_THROWS_AS(full_dynamics(net, UpdateSchedule::parallel(6), 5),
                  CapExceededError);
  CHECK_NOTHROW(full_dynamics(net, UpdateSchedule::parallel(6), 6));
}
