#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "omrel/json_io.hpp"
#include "omrel/model.hpp"
#include "omrel/prover.hpp"
#include "support/generators.hpp"

using namespace omrel;

namespace {

Equation eq(const char* text) { return parse_equation(text); }

ProofBudget depth(int d) {
  ProofBudget b;
  b.max_depth = d;
  return b;
}

void check_proved(const Equation& e, AxiomSet set, const ProofBudget& budget) {
  auto out = prove(e, set, budget);
  INFO(render(e), " under ", to_string(set));
  REQUIRE(out.proved());
  std::string error;
  CHECK_MESSAGE(replay(out.trace, e, set, &error), error);
  CHECK(static_cast<int>(out.trace.steps.size()) <= budget.max_depth);
}

bool mentions(const std::vector<Axiom>& list, const char* id) {
  for (const auto& a : list) {
    if (a.id == id) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("axiom lists") {
  const auto& base = axiom_list(AxiomSet::Base);
  CHECK(mentions(base, "sub-meet"));
  CHECK(axiom_by_id("sub-meet").eq == eq("(1 & x);(1 & y) = 1 & x & y"));
  CHECK_FALSE(mentions(base, "int-swap"));
  const auto& integral = axiom_list(AxiomSet::Integral);
  CHECK(mentions(integral, "int-swap"));
  CHECK(axiom_by_id("int-swap").eq == eq("1 & x;y = 1 & y;x"));
  CHECK(mentions(axiom_list(AxiomSet::Commutative), "comm"));
  CHECK(axiom_by_id("comm").eq == eq("x;y = y;x"));
  CHECK_FALSE(mentions(axiom_list(AxiomSet::Commutative), "int-swap"));
  CHECK(mentions(axiom_list(AxiomSet::IntegralLang), "lang-split"));
  CHECK(mentions(axiom_list(AxiomSet::IntegralLang), "add-right"));
  CHECK_FALSE(mentions(axiom_list(AxiomSet::IntegralJoin), "lang-split"));
  CHECK(mentions(axiom_list(AxiomSet::BaseJoin), "dist-meet"));
  // every set extends the base set
  for (AxiomSet s : all_axiom_sets()) {
    for (const auto& a : base) CHECK(mentions(axiom_list(s), a.id.c_str()));
    CHECK(axiom_set_from_string(to_string(s)) == s);
  }
  CHECK(axiom_by_id("mon").eq.relation == Relation::Eq);
  CHECK_THROWS(axiom_by_id("nope"));
}

TEST_CASE("prover examples") {
  check_proved(eq("(1 & x);(1 & y) = 1 & x & y"), AxiomSet::Base, depth(1));
  auto refl = prove(eq("x = x"), AxiomSet::Base, depth(0));
  CHECK(refl.proved());
  CHECK(refl.trace.steps.empty());
  check_proved(eq("0 <= x"), AxiomSet::Base, depth(1));
  check_proved(eq("x & y <= x"), AxiomSet::Base, depth(0));
  check_proved(eq("1 & x;y = 1 & y;x"), AxiomSet::Integral, depth(1));
  CHECK_THROWS(prove(eq("x = y"), AxiomSet::Base, ProofBudget{-1}));
}

TEST_CASE("derived laws") {
  check_proved(eq("(1 & z);(x & y) = (1 & z);x & (1 & z);y"), AxiomSet::Integral, depth(6));
  check_proved(eq("(1 & z);(x & y) = (1 & z);x & (1 & z);y"), AxiomSet::Base, depth(6));
  check_proved(eq("(1 & z);(x & y) = (1 & z);x & y"), AxiomSet::Base, depth(1));
  check_proved(eq("(1 & z);(x & y) = x & (1 & z);y"), AxiomSet::Base, depth(6));
  check_proved(eq("(1 & v1);x;(1 & v2) & (1 & v3);x;(1 & v4) = (1 & v1 & v3);x;(1 & v2 & v4)"),
               AxiomSet::Base, depth(6));
}

TEST_CASE("unprovable in the base set stays unknown") {
  auto out = prove(eq("1 & x;y = 1 & y;x"), AxiomSet::Base, depth(6));
  CHECK_FALSE(out.proved());
  CHECK(out.stats.nodes_expanded > 0);
}

TEST_CASE("every axiom proves itself at depth one") {
  for (AxiomSet s : all_axiom_sets()) {
    for (const auto& a : axiom_list(s)) {
      Equation e = parse_equation(a.text);
      check_proved(e, s, depth(1));
    }
  }
}

TEST_CASE("traces survive JSON and tampering is caught") {
  Equation e = eq("(1 & z);(x & y) = (1 & z);x & (1 & z);y");
  auto out = prove(e, AxiomSet::Base, depth(6));
  REQUIRE(out.proved());
  auto j = to_json(out.trace);
  auto back = trace_from_json(json::parse(j.dump()));
  CHECK(replay(back, e, AxiomSet::Base));
  REQUIRE_FALSE(back.steps.empty());
  auto bad = back;
  bad.steps[0].axiom = bad.steps[0].axiom == "sub-left" ? "sub-right" : "sub-left";
  CHECK_FALSE(replay(bad, e, AxiomSet::Base));
  bad = back;
  bad.terms.back() = parse("x");
  CHECK_FALSE(replay(bad, e, AxiomSet::Base));
  // an integral-only step is rejected in the base set
  auto integral = prove(eq("1 & x;y = 1 & y;x"), AxiomSet::Integral, depth(1));
  REQUIRE(integral.proved());
  CHECK_FALSE(replay(integral.trace, eq("1 & x;y = 1 & y;x"), AxiomSet::Base));
}

TEST_CASE("budget monotonicity") {
  const std::vector<Equation> goals{eq("(1 & z);(x & y) = (1 & z);x & (1 & z);y"),
                                    eq("(1 & x);y;(1 & x) = (1 & x);y"),
                                    eq("(1 & x);(1 & y) = (1 & y);(1 & x)")};
  for (const auto& g : goals) {
    bool before = false;
    for (int d = 0; d <= 5; ++d) {
      bool now = prove(g, AxiomSet::Integral, depth(d)).proved();
      CHECK_FALSE((before && !now));
      before = now;
    }
    before = false;
    for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
      ProofBudget b = depth(5);
      b.max_nodes = n;
      bool now = prove(g, AxiomSet::Integral, b).proved();
      CHECK_FALSE((before && !now));
      before = now;
    }
  }
}

TEST_CASE("random rewrite walks are sound in every model class") {
  std::mt19937_64 rng(41);
  testing::TermShape shape;
  shape.max_depth = 3;
  shape.allow_join = false;
  for (AxiomSet set : {AxiomSet::Base, AxiomSet::Integral, AxiomSet::IntegralLang, AxiomSet::Commutative}) {
    testing::TermShape s = shape;
    s.allow_join = has_join(set);
    int walks = 0;
    for (int attempt = 0; attempt < 400 && walks < 60; ++attempt) {
      Term start = testing::random_term(rng, s);
      auto pool = instance_pool({start});
      Term cur = start;
      ProofTrace trace{{start}, {}};
      for (int k = 0; k < 3; ++k) {
        auto next = one_step_rewrites(cur, set, pool);
        if (next.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
        auto& r = next[pick(rng)];
        trace.steps.push_back(r.step);
        trace.terms.push_back(r.result);
        cur = r.result;
      }
      if (trace.steps.empty()) continue;
      ++walks;
      Equation e{start, cur, Relation::Eq};
      CHECK(replay(trace, e, set));
      if (set == AxiomSet::IntegralLang) {
        auto lm = testing::random_lang_model(rng, s.vars);
        CHECK(eval_lang(start, lm) == eval_lang(cur, lm));
      } else if (set == AxiomSet::Base) {
        auto rm = testing::random_rel_model(rng, s.vars);
        CHECK(eval_rel(start, rm) == eval_rel(cur, rm));
      } else {
        RelSearchOptions opts;
        opts.mode = set == AxiomSet::Integral ? SearchMode::Integral : SearchMode::Commutative;
        opts.max_base = 3;
        opts.exhaustive_max_base = 1;
        opts.random_models = 20;
        CHECK_FALSE(search_rel_counterexample(e, opts).report);
      }
    }
    CHECK(walks >= 30);
  }
}
