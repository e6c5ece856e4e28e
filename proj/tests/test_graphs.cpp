#include <catch2/catch_amalgamated.hpp>

#include "ban/graphs.hpp"
#include "ban/io.hpp"

using namespace ban;

namespace {

AutomataNetwork example1() {
  return parse_network("a = !b | c\nb = a\nc = !b\n");
}

// Three cycles through a: a>b>c>d>a, a>e>h>a and the self-loop.
AutomataNetwork tangential_example() {
  return parse_network("a = a | d | !h\nb = !a\nc = b\nd = c\ne = a\nh = e\n");
}

}  // namespace

TEST_CASE("influences is semantic") {
  auto net = example1();
  CHECK(influences(net, 1, 0));        // b -> a
  CHECK_FALSE(influences(net, 2, 1));  // c does not reach f_b
  CHECK_FALSE(influences(net, 0, 0));  // f_a reads only b and c

  auto constant = parse_network("a = 1\nb = 0\n");
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK_FALSE(influences(constant, i, j));

  // A vacuous syntactic occurrence does not influence.
  auto vacuous = parse_network("a = b & !b\nb = a\n");
  CHECK_FALSE(influences(vacuous, 1, 0));
}

TEST_CASE("influence support cap") {
  AutomataNetwork wide;
  std::vector<GateId> children;
  for (int i = 0; i < 21; ++i) {
    wide.names.push_back(auto_name(i));
    children.push_back(wide.pool.input(static_cast<std::uint32_t>(i)));
  }
  GateId big = wide.pool.gate_or(std::move(children));
  for (int i = 0; i < 21; ++i) wide.outputs.push_back(big);
  CHECK_THROWS_AS(influences(wide, 0, 0), CapExceededError);

  auto small = parse_network("a = b | c | d | e\nb = a\nc = a\nd = a\ne = a\n");
  CHECK_THROWS_AS(influences(small, 1, 0, /*support_cap=*/3), CapExceededError);
  CHECK(influences(small, 1, 0, /*support_cap=*/4));
}

TEST_CASE("interaction digraph of the running example") {
  auto net = example1();
  auto gi = interaction_digraph(net);
  std::vector<std::pair<int, int>> expected{{0, 1}, {1, 0}, {1, 2}, {2, 0}};
  CHECK(gi.edges == expected);
}

TEST_CASE("interaction digraph of the tangential example") {
  auto net = tangential_example();
  auto gi = interaction_digraph(net);
  std::vector<std::pair<int, int>> expected{
      {0, 0}, {0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 0}};
  CHECK(gi.edges == expected);
  CHECK(gi.in_degree(0) == 3);
  CHECK(gi.out_degree(0) == 3);
}

TEST_CASE("interaction digraph of constants is empty") {
  auto net = parse_network("a = 1\nb = 0\nc = 1\n");
  CHECK(interaction_digraph(net).edges.empty());
}

TEST_CASE("update digraph labels") {
  auto net = example1();
  auto sched = parse_schedule("{a} {b} {c}", net);
  auto ud = update_digraph(net, sched);
  CHECK(ud.label_of(0, 1) == EdgeLabel::LT);
  CHECK(ud.label_of(1, 2) == EdgeLabel::LT);
  CHECK(ud.label_of(2, 0) == EdgeLabel::GE);
  CHECK(ud.label_of(1, 0) == EdgeLabel::GE);
  CHECK(ud.lt_edge_count() == 2);
  CHECK_FALSE(ud.label_of(0, 2).has_value());
}

TEST_CASE("update digraph of the tangential example") {
  auto net = tangential_example();
  auto sched = parse_schedule("{h} {a,c,d,e} {b}", net);
  auto ud = update_digraph(net, sched);
  CHECK(ud.lt_edge_count() == 2);
  CHECK(ud.label_of(0, 1) == EdgeLabel::LT);  // a -> b
  CHECK(ud.label_of(5, 0) == EdgeLabel::LT);  // h -> a
  CHECK(ud.label_of(0, 4) == EdgeLabel::GE);
}

TEST_CASE("parallel schedule labels everything GE") {
  auto net = tangential_example();
  auto ud = update_digraph(net, UpdateSchedule::parallel(6));
  for (EdgeLabel l : ud.labels) CHECK(l == EdgeLabel::GE);
}

TEST_CASE("update digraph rejects non-block-sequential schedules") {
  auto net = example1();
  auto periodic = parse_schedule("{b,c} {a} {a,b}", net);
  CHECK_THROWS_MATCHES(update_digraph(net, periodic), PreconditionError,
                       Catch::Matchers::Message("schedule is not block-sequential"));
}

TEST_CASE("edge signs by monotonicity") {
  auto net = example1();
  CHECK(edge_sign(net, 1, 0) == Sign::Negative);  // !b in f_a
  CHECK(edge_sign(net, 2, 0) == Sign::Positive);  // c in f_a
  CHECK_THROWS_MATCHES(edge_sign(net, 2, 1), PreconditionError,
                       Catch::Matchers::Message("edge has no influence"));

  auto xo = parse_network("a = (b & !c) | (!b & c)\nb = a\nc = a\n");
  CHECK_THROWS_MATCHES(edge_sign(xo, 1, 0), PreconditionError,
                       Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                           "unsigned edge")));
}

TEST_CASE("cycle signs are the parity of negative edges") {
  auto self = parse_network("a = a\n");
  CHECK(cycle_sign(self, {0}) == Sign::Positive);

  auto net = tangential_example();
  CHECK(cycle_sign(net, {0, 1, 2, 3}) == Sign::Negative);  // one negative edge
  CHECK(cycle_sign(net, {0, 4, 5}) == Sign::Negative);     // !h enters a
  CHECK(cycle_sign(net, {0}) == Sign::Positive);
  CHECK_THROWS_AS(cycle_sign(net, {}), PreconditionError);
}
