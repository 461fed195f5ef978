#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omrel/json_io.hpp"
#include "omrel/model.hpp"
#include "support/generators.hpp"

using namespace omrel;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

RelModel rel(std::size_t base, std::map<std::string, Pairs> vars) {
  RelModel m;
  m.base = base;
  for (auto& [name, pairs] : vars) m.vars[name] = BitRel::from_pairs(base, pairs);
  return m;
}

Equation eq(const char* text) { return parse_equation(text); }

bool contains(const Closure& c, const BitRel& r) {
  return std::binary_search(c.elements.begin(), c.elements.end(), r);
}

}  // namespace

TEST_CASE("eval_rel examples") {
  RelModel m = rel(3, {});
  CHECK(eval_rel(Term::ide(), m).pairs() == Pairs{{0, 0}, {1, 1}, {2, 2}});
  CHECK(eval_rel(Term::zero(), m).empty());
  m = rel(3, {{"x", {{0, 1}}}, {"y", {{1, 2}}}});
  CHECK(eval_rel(parse("x;y"), m).pairs() == Pairs{{0, 2}});
  CHECK_THROWS_AS(eval_rel(parse("z"), m), UnboundVariable);
}

TEST_CASE("eval_rel agrees with a naive pair-set evaluator") {
  std::mt19937_64 rng(23);
  testing::TermShape shape;
  shape.max_depth = 4;
  for (int i = 0; i < 1000; ++i) {
    Term t = testing::random_term(rng, shape);
    auto m = testing::random_rel_model(rng, shape.vars, 6);
    CHECK(testing::to_pairset(eval_rel(t, m)) == testing::naive_eval(t, m));
  }
}

TEST_CASE("eval_lang examples") {
  LangModel m;
  m.alphabet = {'a', 'b'};
  CHECK(eval_lang(Term::ide(), m) == Language{""});
  m.vars["x"] = {"a"};
  m.vars["y"] = {"b"};
  CHECK(eval_lang(parse("x;y"), m) == Language{"ab"});
  CHECK(eval_lang(parse("x & 1"), m).empty());
  CHECK(eval_lang(parse("x + y;x"), m) == Language{"a", "ba"});
  CHECK_THROWS_AS(eval_lang(parse("q"), m), UnboundVariable);
}

TEST_CASE("generated closure examples") {
  auto c = generated_closure(rel(1, {{"x", {{0, 0}}}}));
  CHECK(c.complete);
  CHECK(c.elements.size() == 2);

  RelModel z3 = z3_rotation_model();
  c = generated_closure(z3);
  CHECK(c.complete);
  REQUIRE(c.elements.size() == 4);
  CHECK(contains(c, BitRel(3)));
  CHECK(contains(c, BitRel::identity(3)));
  CHECK(contains(c, z3.vars["x"]));
  CHECK(contains(c, z3.vars["y"]));
  CHECK(z3.vars["x"].compose(z3.vars["x"]) == z3.vars["y"]);
  // with unions: every subset of the group
  auto cj = generated_closure(z3, kDefaultClosureCap, ClosureOps::MeetCompJoin);
  CHECK(cj.complete);
  CHECK(cj.elements.size() == 8);

  c = generated_closure(rel(2, {{"x", {{0, 1}}}, {"y", {{1, 0}}}}));
  CHECK(contains(c, BitRel::from_pairs(2, Pairs{{0, 0}})));
  CHECK(contains(c, BitRel::from_pairs(2, Pairs{{1, 1}})));

  auto truncated = generated_closure(z3, 3);
  CHECK_FALSE(truncated.complete);
  CHECK(truncated.elements.size() == 3);
}

TEST_CASE("closure is closed under the operations") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 50; ++i) {
    auto m = testing::random_rel_model(rng, {"x", "y"}, 3);
    auto c = generated_closure(m);
    REQUIRE(c.complete);
    for (const auto& a : c.elements) {
      for (const auto& b : c.elements) {
        CHECK(contains(c, a & b));
        CHECK(contains(c, a.compose(b)));
      }
    }
  }
}

TEST_CASE("integrality") {
  CHECK(is_integral_model(z3_rotation_model()) == Tri::True);
  CHECK(is_integral_model(rel(2, {{"x", {{0, 1}}}, {"y", {{1, 0}}}})) == Tri::False);
  CHECK(is_integral_model(rel(1, {{"x", {{0, 0}}}, {"y", {}}})) == Tri::True);
  CHECK(is_integral_model(rel(1, {})) == Tri::True);
  // x;y & 1 really is a proper subidentity there
  auto m = rel(2, {{"x", {{0, 1}}}, {"y", {{1, 0}}}});
  CHECK(eval_rel(parse("x;y & 1"), m).pairs() == Pairs{{0, 0}});
  // group relations are integral and commutative
  for (std::size_t n = 1; n <= 4; ++n) {
    RelModel g;
    g.base = n;
    g.vars["x"] = group_relation(n, {0, n - 1});
    g.vars["y"] = group_relation(n, {n / 2});
    CHECK(is_integral_model(g) == Tri::True);
    CHECK(is_commutative_model(g) == Tri::True);
  }
}

TEST_CASE("relational counterexample search examples") {
  RelSearchOptions opts;
  opts.max_base = 2;
  auto r = search_rel_counterexample(eq("1 & x;y = 1 & y;x"), opts);
  REQUIRE(r.report);
  CHECK(r.report->verify());
  CHECK(r.report->exhaustive);
  const auto& m = std::get<RelModel>(r.report->model);
  CHECK(m.base == 2);
  CHECK(m.vars.at("x").pairs() == Pairs{{0, 1}});
  CHECK(m.vars.at("y").pairs() == Pairs{{1, 0}});
  CHECK(std::get<std::pair<std::size_t, std::size_t>>(r.report->witness) ==
        std::pair<std::size_t, std::size_t>{0, 0});

  opts.mode = SearchMode::Integral;
  opts.max_base = 3;
  opts.random_models = 300;
  r = search_rel_counterexample(eq("1 & x;y = 1 & y;x"), opts);
  CHECK_FALSE(r.report);
  CHECK(r.stats.accepted > 300);

  r = search_rel_counterexample(eq("x;y & 1 = (x & 1);(y & 1)"), opts);
  REQUIRE(r.report);
  CHECK(r.report->verify());
  const auto& im = std::get<RelModel>(r.report->model);
  CHECK(is_integral_model(im) == Tri::True);

  // the Z3 rotation model itself refutes it
  auto z = check_in_model(eq("x;y & 1 = (x & 1);(y & 1)"), z3_rotation_model());
  REQUIRE(z);
  CHECK(z->verify());
}

TEST_CASE("commutative mode") {
  RelSearchOptions opts;
  opts.mode = SearchMode::Commutative;
  opts.max_base = 4;
  opts.random_models = 300;
  CHECK_FALSE(search_rel_counterexample(eq("x;y = y;x"), opts).report);
  CHECK_FALSE(search_rel_counterexample(eq("1 & x;y = 1 & y;x"), opts).report);
  CHECK_FALSE(search_rel_counterexample(eq("(1 & x);y = y;(1 & x)"), opts).report);
  opts.mode = SearchMode::General;
  CHECK(search_rel_counterexample(eq("x;y = y;x"), opts).report);
}

TEST_CASE("language counterexample search examples") {
  LangSearchOptions opts;
  CHECK_FALSE(search_lang_counterexample(eq("x;y & 1 = (x & 1);(y & 1)"), opts).report);
  CHECK_FALSE(search_lang_counterexample(eq("1 & x;y = 1 & y;x"), opts).report);
  auto r = search_lang_counterexample(eq("x;y = y;x"), opts);
  REQUIRE(r.report);
  CHECK(r.report->verify());
  const auto& m = std::get<LangModel>(r.report->model);
  CHECK(m.vars.at("x") == Language{"a"});
  CHECK(m.vars.at("y") == Language{"b"});
  CHECK(std::get<Word>(r.report->witness) == "ab");
}

TEST_CASE("leq semantics in search") {
  RelSearchOptions opts;
  opts.max_base = 2;
  CHECK_FALSE(search_rel_counterexample(eq("x & y <= x"), opts).report);
  auto r = search_rel_counterexample(eq("x <= x & y"), opts);
  REQUIRE(r.report);
  CHECK(r.report->witness_in_lhs);
  CHECK(r.report->verify());
}

TEST_CASE("reports survive JSON") {
  RelSearchOptions opts;
  opts.max_base = 2;
  auto r = search_rel_counterexample(eq("1 & x;y = 1 & y;x"), opts);
  REQUIRE(r.report);
  auto j = to_json(*r.report);
  CHECK(j["model"]["base"] == 2);
  auto back = report_from_json(json::parse(j.dump()));
  CHECK(back.verify());
  CHECK(std::get<RelModel>(back.model) == std::get<RelModel>(r.report->model));

  auto lr = search_lang_counterexample(eq("x;y = y;x"), LangSearchOptions{});
  REQUIRE(lr.report);
  auto lj = to_json(*lr.report);
  CHECK(lj["model"]["vars"]["x"] == json::array({"a"}));
  CHECK(report_from_json(json::parse(lj.dump())).verify());

  // tampered model no longer verifies
  j["model"]["vars"]["y"] = json::array();
  CHECK_FALSE(report_from_json(j).verify());
}

TEST_CASE("model JSON rejects bad input") {
  CHECK_THROWS(rel_model_from_json(json::parse(R"({"base": 2, "vars": {"x": [[0, 2]]}})")));
  CHECK_THROWS(rel_model_from_json(json::parse(R"({"base": 0, "vars": {}})")));
  CHECK_THROWS(lang_model_from_json(json::parse(R"({"alphabet": ["ab"], "vars": {}})")));
}
