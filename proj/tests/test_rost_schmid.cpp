#include <doctest.h>

#include "mwcalc/rost_schmid.hpp"
#include "mwcalc/suites.hpp"
#include "mwcalc/text.hpp"

using namespace mwcalc;

TEST_CASE("mu goldens on A1 over F5") {
  FieldPtr F5 = parse_field("F5");
  Scheme A1 = Scheme::affine_line(F5);
  FieldPtr Ft = A1.function_field();
  RSCochain c = generic_cochain(A1, parse_mw(Ft, "[t]"));
  CHECK(to_string(mu_f(c, parse_elem(Ft, "t"))) == "t: [-1] @ t* t");
  CHECK(to_string(mu_f(c, parse_elem(Ft, "-t"))) == "0");
  RSCochain m = mu_f(c, parse_elem(Ft, "2*t"));
  CHECK(to_string(m) == "t: -[2] + [-1] + eta*[2,-1] - eta*[-1,2] @ t* 2*t");
  const TwistedMW* v = m.at(Point::closed(parse_poly(F5, "t")));
  REQUIRE(v);
  CHECK(mw_equal(v->expr, mw_mul(eps_expr(F5), bracket(F5, F5->from_int(-2)))));
}

TEST_CASE("ord_tilde of powers of t is n_eps") {
  FieldPtr F = parse_field("F3");
  Scheme A1 = Scheme::affine_line(F);
  FieldPtr Ft = A1.function_field();
  CHECK(to_string(ord_tilde(parse_elem(Ft, "t^2"), A1)) == "t: 2 + eta*[-1] @ t* t^2");
  for (int n = -3; n <= 3; ++n) {
    if (n == 0) continue;
    Elem f = Ft->pow(parse_elem(Ft, "t"), n);
    RSCochain o = ord_tilde(f, A1);
    const TwistedMW* v = o.at(Point::closed(parse_poly(F, "t")));
    REQUIRE(v);
    CHECK(mw_equal(normalized(*v).expr, n_eps_expr(F, n)));
  }
}

TEST_CASE("ord_tilde recovers valuations classically") {
  FieldPtr F = parse_field("F5");
  Scheme P1 = Scheme::proj_line(F);
  FieldPtr Ft = P1.function_field();
  Sampler s(4);
  for (int trial = 0; trial < 50; ++trial) {
    Elem f = s.ratfunc(*Ft, 4);
    RSCochain o = ord_tilde(f, P1);
    int64_t total = 0;
    for (const auto& [pt, val] : chow_comparison(o)) {
      ValuationSpec v = pt.kind == Point::Infinity ? ValuationSpec::at_infinity() : ValuationSpec::padic(pt.p);
      int64_t n = valuation(*Ft, f, v);
      CHECK(val.degree() == 0);
      CHECK(mw_equal(val, mw_scale(parse_mw(point_field(P1, pt), "1"), n)));
      total += n * point_degree(pt);
    }
    // Principal divisors have degree zero.
    CHECK(total == 0);
  }
}

TEST_CASE("differential squares to zero and kills the degree") {
  FieldPtr F = parse_field("F3");
  Scheme P1 = Scheme::proj_line(F);
  FieldPtr Ft = P1.function_field();
  Sampler s(9);
  for (int trial = 0; trial < 60; ++trial) {
    int twist = static_cast<int>(s.uniform(-2, 2));
    RSCochain c = generic_cochain(P1, s.expr(Ft, static_cast<int>(s.uniform(0, 2)), 2, 1, 2), twist);
    RSCochain dc = differential(c);
    CHECK(differential(dc).empty());
    if (twist % 2 == 0) {
      CHECK(mw_is_zero(normalized(pushforward_point(dc)).expr));
    } else {
      CHECK(classical_degree(dc).value == 0);
    }
  }
}

TEST_CASE("unramified classes are closed and pulled back") {
  FieldPtr F = parse_field("F5");
  Scheme A1 = Scheme::affine_line(F);
  Sampler s(2);
  for (int trial = 0; trial < 40; ++trial) {
    MWExpr c = s.expr(F, static_cast<int>(s.uniform(-1, 1)), 2, 1);
    RSCochain x = pullback_flat(c, A1);
    CHECK(differential(x).empty());
    auto got = h0_membership(x);
    REQUIRE(got);
    CHECK(mw_equal(*got, c));
  }
  RSCochain t = generic_cochain(A1, parse_mw(A1.function_field(), "[t]"));
  CHECK_FALSE(h0_membership(t));
  CHECK_THROWS_AS(h0_membership(generic_cochain(Scheme::proj_line(F), parse_mw(A1.function_field(), "1"))), DomainError);
}

TEST_CASE("Euler classes of O(d) on P1") {
  for (const char* q : {"F3", "F5", "F7"}) {
    FieldPtr F = parse_field(q);
    Sampler s(31);
    for (int d = 0; d <= 4; ++d)
      for (int k = 0; k < 4; ++k) {
        Poly sec;
        do {
          sec = s.poly(*F, d);
        } while (sec.is_zero());
        ChowWittClass e = euler_class_line(d, F, sec);
        CHECK(e.chow_degree == d);
        CHECK(differential(e.cycle).empty());
        if (d % 2 == 0) {
          REQUIRE(e.mw_degree);
          CHECK(mw_equal(*e.mw_degree, mw_scale(h_expr(F), d / 2)));
        } else {
          CHECK_FALSE(e.mw_degree);
        }
      }
  }
  CHECK_THROWS_AS(euler_class_line(1, parse_field("F3"), Poly{}), DomainError);
}

TEST_CASE("exterior product with a point class") {
  FieldPtr F = parse_field("F5");
  Scheme A1 = Scheme::affine_line(F);
  Scheme pt = Scheme::point(F);
  FieldPtr Ft = A1.function_field();
  RSCochain x = generic_cochain(A1, parse_mw(Ft, "[t+1]"));
  RSCochain one = generic_cochain(pt, parse_mw(F, "1"));
  RSCochain xy = exterior_product(x, one);
  REQUIRE(xy.at(Point::generic()));
  CHECK(twisted_equal(*xy.at(Point::generic()), *x.at(Point::generic())));
  RSCochain y = generic_cochain(pt, parse_mw(F, "[2]"));
  RSCochain p = exterior_product(x, y);
  CHECK(mw_equal(normalized(*p.at(Point::generic())).expr, parse_mw(Ft, "[t+1,2]")));
  // d(x * y) = dx * y for y on the point.
  RSCochain lhs = differential(p), rhs = exterior_product(differential(x), y);
  REQUIRE(lhs.values.size() == rhs.values.size());
  for (size_t i = 0; i < lhs.values.size(); ++i) {
    CHECK(lhs.values[i].first == rhs.values[i].first);
    CHECK(twisted_equal(lhs.values[i].second, rhs.values[i].second));
  }
}
