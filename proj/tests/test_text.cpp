#include <doctest.h>

#include "mwcalc/suites.hpp"
#include "mwcalc/text.hpp"

using namespace mwcalc;

TEST_CASE("expression parsing") {
  FieldPtr F = parse_field("F5");
  MWExpr x = parse_mw(F, "[2,3] + eta*[2,3,4]");
  CHECK(x.degree() == 2);
  CHECK(x.size() == 2);
  CHECK(to_string(x) == "[2,3] + eta*[2,3,-1]");
  // <a,b> is the form <a> + <b>, and <u> = 1 + eta[u].
  CHECK(to_string(parse_mw(F, "<2,3>")) == "2 + eta*[2] + eta*[3]");
  CHECK(mw_equal(parse_mw(F, "<2>"), mw_add(parse_mw(F, "1"), mw_mul(eta(F), bracket(F, F->from_int(2))))));
  CHECK(mw_equal(parse_mw(F, "h"), parse_mw(F, "1 + <-1>")));
  CHECK(mw_equal(parse_mw(F, "eps"), mw_neg(parse_mw(F, "<-1>"))));
  CHECK(mw_equal(parse_mw(F, "neps(3)"), parse_mw(F, "<1,-1,1>")));
  CHECK(mw_equal(parse_mw(F, "pf(2)"), parse_mw(F, "<-1,2>")));
  CHECK(parse_mw(F, "eta^3").degree() == -3);
  CHECK(mw_equal(parse_mw(F, "2*([2] - [3])"), parse_mw(F, "[2]+[2]-[3]-[3]")));
  CHECK(parse_mw(F, "0").is_zero());
  FieldPtr Ft = parse_field("F5(t)");
  CHECK(mw_equal(parse_mw(Ft, "<2>*[t]"), parse_mw(Ft, "[t] + eta*[2,t]")));
}

TEST_CASE("expression errors carry positions") {
  FieldPtr F = parse_field("F5");
  try {
    parse_mw(F, "[0]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
    CHECK(std::string(e.what()).find("zero slot") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_mw(F, "[2] + 1"), ParseError);
  CHECK_THROWS_AS(parse_mw(F, "[2"), ParseError);
  CHECK_THROWS_AS(parse_mw(F, "[t]"), DomainError);
  CHECK_THROWS_AS(parse_mw(F, "[2] @O(1)"), DomainError);
}

TEST_CASE("twist suffixes") {
  FieldPtr F = parse_field("F5");
  CHECK(parse_twist("O(3)") == 3);
  CHECK(parse_twist("@ O(-2)") == -2);
  CHECK(parse_twist("omega") == -2);
  CHECK(parse_twist("triv") == 0);
  CHECK_THROWS_AS(parse_twist("O(x)"), DomainError);
  ParsedExpr p = parse_expr(F, "[2] @O(3)");
  REQUIRE(p.twist);
  CHECK(*p.twist == 3);
  CHECK_FALSE(parse_expr(F, "[2]").twist);
}

TEST_CASE("cochain parsing") {
  FieldPtr F = parse_field("F5");
  Scheme P1 = Scheme::proj_line(F);
  RSCochain c = parse_cochain(P1, -2, "{t: 1; t^2+2: <s>; inf: 2}");
  CHECK(c.codim == 1);
  CHECK(c.values.size() == 3);
  CHECK(c.at(Point::infinity()));
  RSCochain g = parse_cochain(P1, 0, "[t+1]");
  CHECK(g.codim == 0);
  REQUIRE(g.at(Point::generic()));
  CHECK_THROWS_AS(parse_cochain(P1, 0, "{t^2+1: 1}"), DomainError);
  CHECK_THROWS_AS(parse_cochain(P1, 0, "{t: 1; inf: [2]}"), DomainError);
}

TEST_CASE("printing round trips") {
  Sampler s(17);
  for (const char* name : {"F5", "F9", "F3(t)", "F5(t)", "F27", "F3[x]/(x^2+1)[y]/(y^2-x-1)"}) {
    FieldPtr F = parse_field(name);
    CHECK(parse_field(F->key())->key() == F->key());
    for (int trial = 0; trial < 50; ++trial) {
      MWExpr x = s.expr(F, static_cast<int>(s.uniform(-1, 2)), 3, 1, 2);
      std::string text = to_string(x);
      MWExpr y = parse_mw(F, text);
      CHECK(to_string(y) == text);
      if (F->is_finite()) CHECK(mw_equal(x, y));
    }
  }
}
