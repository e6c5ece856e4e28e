#include <catch2/catch_amalgamated.hpp>

#include "ban/dynamics.hpp"
#include "ban/families.hpp"
#include "ban/io.hpp"
#include "ban/randomgen.hpp"
#include "ban/reduce.hpp"

using namespace ban;

namespace {

AutomataNetwork tangential_example() {
  return parse_network("a = a | d | !h\nb = !a\nc = b\nd = c\ne = a\nh = e\n");
}

}  // namespace

TEST_CASE("build_cycle") {
  auto self = build_cycle(1, {Sign::Positive});
  CHECK(emit_network(self) == "a = a\n");

  auto neg3 = build_cycle(3, {Sign::Positive, Sign::Positive, Sign::Negative});
  TCLayout layout;
  auto spec = recognize_tc(neg3, &layout);
  REQUIRE(spec.has_value());
  CHECK(spec->cycle_signs == std::vector<Sign>{Sign::Negative});
  CHECK(cycle_sign(neg3, layout.cycles[0]) == Sign::Negative);

  CHECK_THROWS_AS(build_cycle(0, {}), PreconditionError);
  CHECK_THROWS_AS(build_cycle(3, {Sign::Positive}), PreconditionError);
}

TEST_CASE("positive cycles have exactly two fixed points") {
  for (int n = 1; n <= 6; ++n) {
    auto net = build_cycle(n, std::vector<Sign>(n, Sign::Positive));
    CHECK(count_limit_cycles(net, UpdateSchedule::parallel(n), 1) == 2);
  }
}

TEST_CASE("build_double_cycle structure and signs") {
  TCLayout layout;
  auto net = build_double_cycle(
      DCSpec{Sign::Negative, Sign::Positive, 2, 3}, &layout);
  CHECK(net.size() == 4);
  CHECK(cycle_sign(net, layout.cycles[0]) == Sign::Negative);
  CHECK(cycle_sign(net, layout.cycles[1]) == Sign::Positive);

  auto spec = recognize_tc(net);
  REQUIRE(spec.has_value());
  CHECK(spec->cycle_lengths == std::vector<int>{3, 2});
  CHECK(spec->tangent_length == 0);

  CHECK(DCSpec{Sign::Positive, Sign::Positive, 1, 1}.degenerate());
  auto degenerate =
      build_double_cycle(DCSpec{Sign::Positive, Sign::Positive, 1, 1});
  CHECK(degenerate.size() == 1);  // built but flagged; no theorems asserted
  CHECK_FALSE(recognize_tc(degenerate).has_value());
}

TEST_CASE("build_tc realizes the worked example's shape") {
  TCSpec spec;
  spec.cycle_lengths = {4, 3, 1};
  spec.cycle_signs = {Sign::Negative, Sign::Negative, Sign::Positive};
  spec.tangent_length = 0;
  for (std::size_t i = 0; i < 3; ++i)
    spec.edge_sign_layout.push_back(
        canonical_edge_signs(spec.cycle_lengths[i], spec.cycle_signs[i]));

  auto built = build_tc(spec);
  CHECK(built.size() == 6);
  auto round = recognize_tc(built);
  REQUIRE(round.has_value());
  CHECK(*round == spec);

  // The paper's figure places the negative literals differently; only the
  // parity matters, so the limit dynamics agree.
  auto fig = tangential_example();
  auto fig_spec = recognize_tc(fig);
  REQUIRE(fig_spec.has_value());
  CHECK(fig_spec->cycle_lengths == std::vector<int>{4, 3, 1});
  CHECK(fig_spec->tangent_length == 0);
  CHECK(canonicalize(*fig_spec) == canonicalize(spec));
  CHECK(limit_dynamics(built, UpdateSchedule::parallel(6)).signature ==
        limit_dynamics(fig, UpdateSchedule::parallel(6)).signature);
}

TEST_CASE("build_tc with k = 1 equals build_cycle") {
  TCSpec spec;
  spec.cycle_lengths = {5};
  spec.cycle_signs = {Sign::Positive};
  spec.tangent_length = 0;
  spec.edge_sign_layout = {canonical_edge_signs(5, Sign::Positive)};
  CHECK(network_tree_key(build_tc(spec)) ==
        network_tree_key(build_cycle(5, std::vector<Sign>(5, Sign::Positive))));
}

TEST_CASE("build_tc validates its spec") {
  TCSpec bad;
  bad.cycle_lengths = {2};
  bad.cycle_signs = {Sign::Positive};
  bad.tangent_length = 2;  // cycle not longer than the tangent
  bad.edge_sign_layout = {canonical_edge_signs(2, Sign::Positive)};
  CHECK_THROWS_AS(build_tc(bad), PreconditionError);

  TCSpec parity;
  parity.cycle_lengths = {3};
  parity.cycle_signs = {Sign::Negative};
  parity.tangent_length = 0;
  parity.edge_sign_layout = {canonical_edge_signs(3, Sign::Positive)};
  CHECK_THROWS_AS(build_tc(parity), PreconditionError);
}

TEST_CASE("recognize_tc accepts single cycles") {
  auto cycle = build_cycle(5, std::vector<Sign>(5, Sign::Positive));
  auto spec = recognize_tc(cycle);
  REQUIRE(spec.has_value());
  CHECK(spec->cycle_lengths == std::vector<int>{5});
  CHECK(spec->tangent_length == 0);
}

TEST_CASE("recognize_tc rejects non-TC networks") {
  // The fully reduced worked example: two cycles sharing more than a path.
  CHECK_FALSE(recognize_tc(parse_network("a = a | d | !c\nc = a\nd = !c\n")));
  // Zipped cycles sharing a two-edge prefix.
  CHECK_FALSE(recognize_tc(parse_network("a = a | d | c\nb = !a\nc = b\nd = c\n")));
  // Two disjoint cycles share nothing.
  CHECK_FALSE(recognize_tc(parse_network("a = b\nb = a\nc = d\nd = c\n")));
  // A dangling observer is not part of any cycle.
  CHECK_FALSE(recognize_tc(parse_network("a = b\nb = a\nc = a\n")));
  // Non-literal chain function.
  CHECK_FALSE(recognize_tc(parse_network("a = b\nb = a & a\n")));
  // Conjunctive central clause is out of family.
  CHECK_FALSE(recognize_tc(parse_network("a = b & c\nb = a\nc = a\n")));
}

TEST_CASE("recognize_tc reads tangents") {
  TCSpec spec;
  spec.cycle_lengths = {4, 3};
  spec.cycle_signs = {Sign::Positive, Sign::Negative};
  spec.tangent_length = 1;
  spec.edge_sign_layout = {canonical_edge_signs(4, Sign::Positive),
                           canonical_edge_signs(3, Sign::Negative)};
  auto net = build_tc(spec);
  CHECK(net.size() == 5);
  auto round = recognize_tc(net);
  REQUIRE(round.has_value());
  CHECK(*round == spec);
}

TEST_CASE("construct-then-recognize round-trip on random specs") {
  Rng rng(909);
  for (int round = 0; round < 200; ++round) {
    auto spec = random_tc_spec(rng, 3, 6, 2);
    auto net = build_tc(spec);
    auto back = recognize_tc(net);
    REQUIRE(back.has_value());
    CHECK(*back == spec);
    CHECK(net.size() == spec.network_size());
  }
}

TEST_CASE("tc_fast_reduce on the worked example's schedule") {
  auto fig_spec = *recognize_tc(tangential_example());
  auto spec = canonicalize(fig_spec);
  auto net = build_tc(spec);
  // Same block structure as the paper's schedule, stated on the canonical
  // automaton names (index 5 plays h).
  UpdateSchedule sched;
  sched.blocks = {{5}, {0, 2, 3, 4}, {1}};
  auto reduced = tc_fast_reduce(spec, sched, net);
  CHECK(reduced.cycle_lengths == std::vector<int>{3, 2, 1});
  CHECK(reduced.cycle_signs == spec.cycle_signs);
  CHECK(reduced.tangent_length == 0);

  CHECK(tc_fast_reduce(spec, UpdateSchedule::parallel(6), net) == spec);

  CHECK_THROWS_AS(tc_fast_reduce(spec, sched, tangential_example()),
                  PreconditionError);  // realized network must match the spec
}

TEST_CASE("tc_fast_reduce matches brute force on random specs") {
  Rng rng(31337);
  int checked = 0;
  for (int round = 0; round < 120 && checked < 40; ++round) {
    auto spec = random_tc_spec(rng, 3, 5, 2);
    auto net = build_tc(spec);
    if (net.size() > 12) continue;
    auto sched = random_block_sequential_schedule(rng, net.size());
    TCSpec reduced;
    try {
      reduced = tc_fast_reduce(spec, sched, net);
    } catch (const PreconditionError&) {
      continue;  // ill-posed under this schedule
    }
    if (reduced.degenerate()) continue;
    ++checked;
    CHECK(reduced.cycle_signs ==
          canonicalize(spec).cycle_signs);  // signs preserved
    auto before = limit_dynamics(net, sched);
    auto small = build_tc(reduced);
    auto after = limit_dynamics(small, UpdateSchedule::parallel(small.size()));
    CHECK(before.signature == after.signature);
  }
  REQUIRE(checked >= 40);
}

TEST_CASE("dc_reduce subtracts per-cycle LT counts") {
  DCSpec spec{Sign::Positive, Sign::Negative, 4, 3};
  // One LT edge on each cycle: b and e update before their successors.
  auto net = build_double_cycle(spec);
  UpdateSchedule sched;
  sched.blocks = {{1, 4}, {0, 2, 3, 5}};
  REQUIRE(update_digraph(net, sched).lt_edge_count() == 2);
  auto reduced = dc_reduce(spec, sched);
  CHECK(reduced == DCSpec{Sign::Positive, Sign::Negative, 3, 2});

  CHECK(dc_reduce(spec, UpdateSchedule::parallel(6)) == spec);
}

TEST_CASE("dc_reduce matches brute force on sampled schedules") {
  Rng rng(8080);
  for (int round = 0; round < 30; ++round) {
    auto spec = random_dc_spec(rng, 4);
    auto net = build_double_cycle(spec);
    auto sched = random_block_sequential_schedule(rng, net.size());
    auto reduced = dc_reduce(spec, sched);
    if (reduced.degenerate()) continue;
    auto before = limit_dynamics(net, sched);
    auto small = build_double_cycle(reduced);
    auto after = limit_dynamics(small, UpdateSchedule::parallel(small.size()));
    CHECK(before.signature == after.signature);
  }
}

TEST_CASE("conjunctive double cycles have the same limit signatures") {
  Rng rng(2718);
  for (int round = 0; round < 10; ++round) {
    auto spec = random_dc_spec(rng, 4);
    TCLayout layout;
    auto disj = build_tc(spec.as_tc(), &layout);
    auto conj = build_tc(spec.as_tc(), nullptr, /*conjunctive_central=*/true);
    auto pi = UpdateSchedule::parallel(disj.size());
    CHECK(limit_dynamics(disj, pi).signature ==
          limit_dynamics(conj, pi).signature);
  }
}

TEST_CASE("theorem 4: parallel reduction zips to the largest cycle") {
  Rng rng(5150);
  int checked = 0;
  while (checked < 30) {
    auto spec = random_tc_spec(rng, 3, 6, 2);
    if (spec.has_opposing_equal_cycles()) continue;
    ++checked;
    auto net = build_tc(spec);
    auto [out, report] = reduce_parallel(net);
    int largest = *std::max_element(spec.cycle_lengths.begin(),
                                    spec.cycle_lengths.end());
    CHECK(out.size() == largest);
  }
}

TEST_CASE("opposing equal cycles zip to a tautology and prune away") {
  // DC(+,-,2,2): merging the two duplicate cycle automata leaves the
  // central clause constant, so the semantic prune removes everything.
  // The limit signature survives, the largest-cycle size claim does not.
  auto net = build_double_cycle(DCSpec{Sign::Positive, Sign::Negative, 2, 2});
  auto before = limit_dynamics(net, UpdateSchedule::parallel(3));
  auto [out, report] = reduce_parallel(net);
  CHECK(out.size() == 0);
  auto after = limit_dynamics(out, UpdateSchedule::parallel(0));
  CHECK(before.signature == after.signature);
  CHECK(before.signature == std::vector<int>{1});
}
