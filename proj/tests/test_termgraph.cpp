#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omrel/model.hpp"
#include "omrel/termgraph.hpp"
#include "support/generators.hpp"

using namespace omrel;

namespace {

using Edge = TermGraph::Edge;

bool in_eval(const Term& t, const RelModel& m, std::size_t u, std::size_t v) {
  return eval_rel(t, m).test(u, v);
}

testing::TermShape fragment_shape() {
  testing::TermShape s;
  s.allow_join = false;
  s.allow_zero = false;
  s.vars = {"x", "y"};
  return s;
}

}  // namespace

TEST_CASE("term graph construction") {
  auto g = build_term_graph(parse("x"));
  CHECK(g.nodes == 2);
  CHECK(g.edges == std::vector<Edge>{{0, 1, "x"}});
  CHECK(g.source == 0);
  CHECK(g.target == 1);

  g = build_term_graph(Term::ide());
  CHECK(g.nodes == 1);
  CHECK(g.edges.empty());
  CHECK(g.source == g.target);

  g = build_term_graph(parse("x & 1"));
  CHECK(g.nodes == 1);
  CHECK(g.edges == std::vector<Edge>{{0, 0, "x"}});

  g = build_term_graph(parse("x;y"));
  CHECK(g.nodes == 3);
  CHECK(g.edges == std::vector<Edge>{{0, 1, "x"}, {1, 2, "y"}});
  CHECK(g.target == 2);

  g = build_term_graph(parse("x & y"));
  CHECK(g.nodes == 2);
  CHECK(g.edges == std::vector<Edge>{{0, 1, "x"}, {0, 1, "y"}});

  CHECK_THROWS_AS(build_term_graph(parse("x + y")), FragmentError);
  CHECK_THROWS_AS(build_term_graph(Term::zero()), FragmentError);
}

TEST_CASE("node count is bounded by one plus variable occurrences") {
  std::mt19937_64 rng(43);
  auto shape = fragment_shape();
  shape.max_depth = 5;
  for (int i = 0; i < 500; ++i) {
    Term t = testing::random_term(rng, shape);
    std::size_t occurrences = 0;
    std::vector<Term> stack{t};
    while (!stack.empty()) {
      Term s = stack.back();
      stack.pop_back();
      occurrences += s.is_var();
      for (const auto& c : s.children()) stack.push_back(c);
    }
    CHECK(build_term_graph(t).nodes <= 1 + occurrences);
  }
}

TEST_CASE("homomorphism examples") {
  auto gx = build_term_graph(parse("x"));
  auto h = find_homomorphism(gx, gx);
  REQUIRE(h);
  CHECK(*h == Homomorphism{0, 1});
  CHECK(find_homomorphism(gx, build_term_graph(parse("x & y"))));
  CHECK_FALSE(find_homomorphism(build_term_graph(parse("x;y")), gx));
  CHECK_FALSE(find_homomorphism(build_term_graph(parse("y")), gx));
  // a loop cannot map onto a proper edge
  CHECK_FALSE(find_homomorphism(build_term_graph(parse("1 & x")), gx));
  CHECK(find_homomorphism(build_term_graph(parse("x;x")), build_term_graph(parse("1 & x"))));
  CHECK_FALSE(is_homomorphism({1, 0}, gx, gx));
}

TEST_CASE("decide examples") {
  CHECK(decide_leq_meet_comp_one(parse("x & y"), parse("x")));
  CHECK_FALSE(decide_leq_meet_comp_one(parse("x;y"), parse("x")));
  CHECK_FALSE(decide_leq_meet_comp_one(parse("1 & x;y"), parse("1 & y;x")));
  CHECK(decide_leq_meet_comp_one(Term::zero(), parse("x")));
  CHECK_FALSE(decide_leq_meet_comp_one(parse("x"), Term::zero()));
  CHECK(decide_leq_meet_comp_one(parse("(1 & x);(1 & y)"), parse("1 & x & y")));
  CHECK(decide_leq_meet_comp_one(parse("1 & x;y"), parse("x;(1 & y;x);y")));
  CHECK_THROWS_AS(decide_leq_meet_comp_one(parse("x + y"), parse("x")), FragmentError);
}

TEST_CASE("canonical countermodel examples") {
  auto m = canonical_countermodel(parse("x;y"));
  CHECK(m.base == 3);
  CHECK(m.vars.at("x").pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
  CHECK(m.vars.at("y").pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}});
  CHECK(in_eval(parse("x;y"), m, 0, 2));
  CHECK_FALSE(in_eval(parse("x"), m, 0, 2));

  m = canonical_countermodel(Term::ide(), {"x", "y"});
  CHECK(m.base == 1);
  CHECK(m.vars.at("x").empty());
  CHECK(in_eval(Term::ide(), m, 0, 0));

  m = canonical_countermodel(parse("x & y"));
  CHECK(m.base == 2);
  CHECK_FALSE(in_eval(parse("x;y"), m, 0, 1));
}

TEST_CASE("canonical countermodel contains its own source-target pair") {
  std::mt19937_64 rng(47);
  auto shape = fragment_shape();
  shape.vars = {"x", "y", "z"};
  shape.max_depth = 4;
  for (int i = 0; i < 1000; ++i) {
    Term a = testing::random_term(rng, shape);
    auto g = build_term_graph(a);
    auto m = canonical_countermodel(a);
    CHECK(in_eval(a, m, g.source, g.target));
  }
}

TEST_CASE("decision agrees with evaluation in the canonical countermodel") {
  std::mt19937_64 rng(53);
  auto shape = fragment_shape();
  shape.max_depth = 3;
  for (int i = 0; i < 1000; ++i) {
    Term a = testing::random_term(rng, shape);
    Term b = testing::random_term(rng, shape);
    auto g = build_term_graph(a);
    auto m = canonical_countermodel(a, {"x", "y"});
    CHECK(decide_leq_meet_comp_one(a, b) == in_eval(b, m, g.source, g.target));
  }
}

TEST_CASE("valid decisions survive random models") {
  std::mt19937_64 rng(59);
  auto shape = fragment_shape();
  shape.max_depth = 3;
  int valid = 0;
  for (int i = 0; i < 2000; ++i) {
    Term a = testing::random_term(rng, shape);
    Term b = testing::random_term(rng, shape);
    if (!decide_leq_meet_comp_one(a, b)) continue;
    ++valid;
    auto m = testing::random_rel_model(rng, {"x", "y"});
    CHECK(eval_rel(a, m).subset_of(eval_rel(b, m)));
  }
  CHECK(valid > 100);
}

TEST_CASE("adding a conjunct keeps homomorphisms") {
  std::mt19937_64 rng(61);
  auto shape = fragment_shape();
  shape.max_depth = 3;
  for (int i = 0; i < 500; ++i) {
    Term a = testing::random_term(rng, shape);
    Term b = testing::random_term(rng, shape);
    Term c = testing::random_term(rng, shape);
    if (decide_leq_meet_comp_one(a, b)) CHECK(decide_leq_meet_comp_one(Term::meet(a, c), b));
  }
}

TEST_CASE("join reduction examples") {
  CHECK(decide_leq(parse("x + y"), parse("y + x")));
  CHECK(decide_leq(parse("x;(y + z)"), parse("x;y + x;z")));
  CHECK(decide_leq(parse("x;y + x;z"), parse("x;(y + z)")));
  CHECK_FALSE(decide_leq(parse("x + y"), parse("x")));
  CHECK(decide_leq(Term::zero(), parse("x")));
  CHECK_FALSE(decide_leq(parse("x"), Term::zero()));
  Tri unknown = decide_with_join_reduction(parse("x + y"), parse("x + y"),
                                           [](const Term&, const Term&) { return Tri::Unknown; });
  CHECK(unknown == Tri::Unknown);
  Tri mixed = decide_with_join_reduction(parse("x + y"), parse("x"), [](const Term& a, const Term& b) {
    return a == b ? Tri::True : Tri::Unknown;
  });
  CHECK(mixed == Tri::Unknown);
}

TEST_CASE("dot output") {
  auto dot = to_dot(build_term_graph(parse("x;y")));
  CHECK(dot.find("shape=diamond") != std::string::npos);
  CHECK(dot.find("shape=doublecircle") != std::string::npos);
  CHECK(dot.find("label=\"y\"") != std::string::npos);
}
