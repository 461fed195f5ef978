#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omrel/model.hpp"
#include "omrel/term.hpp"
#include "support/generators.hpp"

using namespace omrel;

namespace {
Term v(const char* n) { return Term::var(n); }
}  // namespace

TEST_CASE("parse honours precedence") {
  CHECK(parse("1 & x;y") == Term::meet(Term::ide(), Term::comp(v("x"), v("y"))));
  CHECK(parse("x + y & z") == Term::join(v("x"), Term::meet(v("y"), v("z"))));
  CHECK(parse("0;x") == Term::zero());
  CHECK(parse("(x + y);z") == Term::comp(Term::join(v("x"), v("y")), v("z")));
  CHECK(parse("  x_1 ;\ty2 ") == Term::comp(v("x_1"), v("y2")));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("   "), ParseError);
  try {
    parse("x & ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  try {
    parse("x ; (y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse("X"), ParseError);
  CHECK_THROWS_AS(parse("x y"), ParseError);
  CHECK_THROWS_AS(parse("10"), ParseError);
}

TEST_CASE("equations") {
  auto e = parse_equation("1 & x;y <= x;(1 & y;x);y");
  CHECK(e.relation == Relation::Leq);
  CHECK(render(e) == "1 & x;y <= x;(1 & y;x);y");
  auto d = e.desugared();
  CHECK(d.relation == Relation::Eq);
  CHECK(d.rhs == e.lhs);
  CHECK(d.desugared() == d);
  CHECK(parse_equation("x = x;1").rhs == v("x"));
  CHECK_THROWS_AS(parse_equation("x"), ParseError);
  CHECK_THROWS_AS(parse_equation("x = "), ParseError);
}

TEST_CASE("render") {
  CHECK(render(Term::meet(Term::ide(), Term::comp(v("x"), v("y")))) == "1 & x;y");
  CHECK(render(Term::zero()) == "0");
  CHECK(render(Term::join(v("x"), v("y"))) == "x + y");
  CHECK(render(parse("(x + y) & z")) == "z & (x + y)");
  CHECK(render(parse("x;(y & z)")) == "x;(y & z)");
  CHECK(render(parse_raw("(x & y) & z")) == "(x & y) & z");
}

TEST_CASE("normalize") {
  CHECK(normalize(parse_raw("x & (0;y)")) == Term::zero());
  CHECK(normalize(parse_raw("(x & y) & x")) == parse("x & y"));
  CHECK(normalize(parse_raw("1;x;1")) == v("x"));
  CHECK(normalize(parse_raw("x + 0")) == v("x"));
  CHECK(normalize(parse_raw("1;1")) == Term::ide());
  CHECK(normalize(parse_raw("(x;y);z")) == normalize(parse_raw("x;(y;z)")));
  CHECK(normalize(parse_raw("y & x")) == normalize(parse_raw("x & y")));
}

TEST_CASE("normal form invariants") {
  std::mt19937_64 rng(7);
  testing::TermShape shape;
  for (int i = 0; i < 2000; ++i) {
    Term t = testing::random_term(rng, shape);
    CHECK(normalize(t) == t);
    if (!t.is_zero()) CHECK_FALSE(t.has_zero());
    std::vector<Term> stack{t};
    while (!stack.empty()) {
      Term s = stack.back();
      stack.pop_back();
      auto kids = s.children();
      if (s.kind() == Kind::Meet || s.kind() == Kind::Join) {
        REQUIRE(kids.size() >= 2);
        for (std::size_t k = 1; k < kids.size(); ++k) CHECK(kids[k - 1] < kids[k]);
        for (const auto& c : kids) CHECK(c.kind() != s.kind());
      }
      if (s.kind() == Kind::Comp) {
        REQUIRE(kids.size() >= 2);
        for (const auto& c : kids) {
          CHECK_FALSE(c.is_ide());
          CHECK(c.kind() != Kind::Comp);
        }
      }
      for (const auto& c : kids) stack.push_back(c);
    }
  }
}

TEST_CASE("render/parse round trip") {
  std::mt19937_64 rng(11);
  testing::TermShape shape;
  shape.max_depth = 5;
  for (int i = 0; i < 3000; ++i) {
    Term t = testing::random_term(rng, shape);
    CHECK(parse(render(t)) == t);
  }
}

TEST_CASE("normalize preserves evaluation") {
  std::mt19937_64 rng(13);
  testing::TermShape shape;
  shape.max_depth = 4;
  for (int i = 0; i < 500; ++i) {
    Term raw = testing::random_raw_term(rng, shape);
    Term n = normalize(raw);
    auto rm = testing::random_rel_model(rng, shape.vars);
    CHECK(eval_rel(raw, rm) == eval_rel(n, rm));
    auto lm = testing::random_lang_model(rng, shape.vars);
    CHECK(eval_lang(raw, lm) == eval_lang(n, lm));
  }
}

TEST_CASE("join_free_decompose examples") {
  auto d = join_free_decompose(parse("(x + y);z"));
  CHECK(d == std::vector<Term>{parse("x;z"), parse("y;z")});
  CHECK(join_free_decompose(v("x")) == std::vector<Term>{v("x")});
  d = join_free_decompose(parse("(x + y) & z"));
  CHECK(d == std::vector<Term>{parse("x & z"), parse("y & z")});
  CHECK(join_free_decompose(Term::zero()).empty());
  CHECK(join_free_decompose(parse("x;(y + z) + x;y")).size() == 2);
}

TEST_CASE("join_free_decompose agrees with evaluation") {
  std::mt19937_64 rng(17);
  testing::TermShape shape;
  shape.max_depth = 4;
  for (int i = 0; i < 500; ++i) {
    Term t = testing::random_term(rng, shape);
    auto parts = join_free_decompose(t);
    CHECK(parts.empty() == t.is_zero());
    for (const auto& p : parts) {
      CHECK_FALSE(p.has_join());
      CHECK_FALSE(p.has_zero());
    }
    Term rejoined = Term::join(parts);
    auto rm = testing::random_rel_model(rng, shape.vars);
    CHECK(eval_rel(rejoined, rm) == eval_rel(t, rm));
  }
}

TEST_CASE("syntactic subidentities") {
  CHECK(is_subidentity_syntactic(parse("1 & x")));
  CHECK(is_subidentity_syntactic(Term::ide()));
  CHECK(is_subidentity_syntactic(Term::zero()));
  CHECK_FALSE(is_subidentity_syntactic(parse("x;y")));
  CHECK_FALSE(is_subidentity_syntactic(parse("(1 & x);y")));
}

TEST_CASE("total order is a strict weak order consistent with equality") {
  std::mt19937_64 rng(19);
  testing::TermShape shape;
  std::vector<Term> ts;
  for (int i = 0; i < 200; ++i) ts.push_back(testing::random_term(rng, shape));
  for (const auto& a : ts) {
    for (const auto& b : ts) {
      bool eq = (a <=> b) == 0;
      CHECK(eq == (a == b));
      if (eq) CHECK(a.hash() == b.hash());
      CHECK(((a <=> b) < 0) == ((b <=> a) > 0));
    }
  }
}
