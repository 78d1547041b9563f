#include <doctest.h>

#include <set>

#include "mwcalc/factor.hpp"
#include "mwcalc/field.hpp"
#include "mwcalc/poly.hpp"
#include "mwcalc/text.hpp"

using namespace mwcalc;

namespace {

uint32_t idx(const Elem& e) { return std::get<uint32_t>(e); }

// Naive polynomial evaluation over F_p with integer coefficients.
int64_t eval_mod(const std::vector<int64_t>& c, int64_t x, int64_t p) {
  int64_t acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = ((acc * x + *it) % p + p) % p;
  return acc;
}

}  // namespace

TEST_CASE("prime field arithmetic agrees with integer arithmetic mod p") {
  for (uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    FieldPtr F = Field::prime(p);
    CHECK(F->size() == p);
    for (uint32_t a = 0; a < p; ++a) {
      for (uint32_t b = 0; b < p; ++b) {
        CHECK(F->fadd(a, b) == (a + b) % p);
        CHECK(F->fmul(a, b) == (a * b) % p);
      }
      if (a != 0) CHECK((a * F->finv(a)) % p == 1);
    }
    // The generator has order p - 1.
    uint32_t g = F->generator();
    std::set<uint32_t> seen;
    uint32_t x = 1;
    for (uint32_t i = 0; i < p - 1; ++i, x = (x * g) % p) seen.insert(x);
    CHECK(seen.size() == p - 1);
  }
}

TEST_CASE("F9 = F3[x]/(x^2+1) matches hand multiplication of a0 + a1 x") {
  FieldPtr F9 = parse_field("F9=F3[x]/(x^2+1)");
  REQUIRE(F9->size() == 9);
  for (uint32_t a = 0; a < 9; ++a) {
    for (uint32_t b = 0; b < 9; ++b) {
      auto ca = F9->coords(a);
      auto cb = F9->coords(b);
      ca.resize(2);
      cb.resize(2);
      // (a0 + a1 x)(b0 + b1 x) = a0 b0 - a1 b1 + (a0 b1 + a1 b0) x
      int c0 = ((int(ca[0]) * int(cb[0]) - int(ca[1]) * int(cb[1])) % 3 + 3) % 3;
      int c1 = (int(ca[0]) * int(cb[1]) + int(ca[1]) * int(cb[0])) % 3;
      auto got = F9->coords(F9->fmul(a, b));
      got.resize(2);
      CHECK(got[0] == uint32_t(c0));
      CHECK(got[1] == uint32_t(c1));
    }
  }
  CHECK(F9->str(F9->variable("x")) == "x");
  // 1 + x has order 8, so it is not a square.
  uint32_t x = idx(F9->variable("x"));
  CHECK_FALSE(F9->fis_square(F9->fadd(x, 1)));
  CHECK(F9->fis_square(x));
}

TEST_CASE("the tower F3 < F9 < F81 is isomorphic to the flat F81") {
  FieldPtr T = parse_field("F3[x]/(x^2+1)[y]/(y^2-x-1)");
  FieldPtr F81 = parse_field("F81");
  REQUIRE(T->size() == 81);
  REQUIRE(F81->size() == 81);
  // Find a root z of the flat modulus inside the tower (F3 embeds by index).
  const Poly& m = F81->modulus();
  std::optional<uint32_t> root;
  for (uint32_t z = 0; z < 81 && !root; ++z) {
    uint32_t acc = 0;
    for (int i = m.degree(); i >= 0; --i) acc = T->fadd(T->fmul(acc, z), m.coeff(i));
    if (acc == 0) root = z;
  }
  REQUIRE(root);
  // phi(sum c_i X^i) = sum c_i z^i on coordinates over F3.
  auto phi = [&](uint32_t a) {
    auto c = F81->coords(a);
    uint32_t acc = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = T->fadd(T->fmul(acc, *root), c[i]);
    return acc;
  };
  std::set<uint32_t> image;
  for (uint32_t a = 0; a < 81; ++a) image.insert(phi(a));
  CHECK(image.size() == 81);
  for (uint32_t a = 0; a < 81; ++a) {
    for (uint32_t b = 0; b < 81; ++b) {
      CHECK(phi(F81->fadd(a, b)) == T->fadd(phi(a), phi(b)));
      CHECK(phi(F81->fmul(a, b)) == T->fmul(phi(a), phi(b)));
    }
  }
}

TEST_CASE("factor t^3 - t over F3 into all monic linears") {
  FieldPtr F3 = Field::prime(3);
  Poly f = parse_poly(F3, "t^3-t");
  Factorization fac = factor(*F3, f);
  CHECK(fac.unit == 1);
  REQUIRE(fac.factors.size() == 3);
  CHECK(fac.factors[0].first == parse_poly(F3, "t"));
  CHECK(fac.factors[1].first == parse_poly(F3, "t+1"));
  CHECK(fac.factors[2].first == parse_poly(F3, "t+2"));
  for (const auto& [g, e] : fac.factors) CHECK(e == 1);
}

TEST_CASE("t^2+1 is irreducible over F3 by trial division") {
  FieldPtr F3 = Field::prime(3);
  for (int64_t c = 0; c < 3; ++c) CHECK(eval_mod({1, 0, 1}, c, 3) != 0);
  Factorization fac = factor(*F3, parse_poly(F3, "t^2+1"));
  REQUIRE(fac.factors.size() == 1);
  CHECK(fac.factors[0].second == 1);
  CHECK(is_irreducible(*F3, parse_poly(F3, "t^2+1")));
}

TEST_CASE("factorizations multiply back and factors have no roots below degree 4") {
  for (uint32_t p : {3u, 5u, 7u}) {
    FieldPtr F = Field::prime(p);
    uint64_t state = 12345 + p;
    for (int trial = 0; trial < 60; ++trial) {
      Poly f;
      int deg = 1 + static_cast<int>(trial % 7);
      for (int i = 0; i <= deg; ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        f.c.push_back(static_cast<uint32_t>((state >> 33) % p));
      }
      if (f.c.back() == 0) f.c.back() = 1;
      Factorization fac = factor(*F, f);
      Poly prod = poly::constant(fac.unit);
      for (const auto& [g, e] : fac.factors) {
        CHECK(g.lead() == 1);
        for (int k = 0; k < e; ++k) prod = poly::mul(*F, prod, g);
        if (g.degree() >= 2 && g.degree() <= 3) {
          for (uint32_t c = 0; c < p; ++c) CHECK(poly::eval(*F, g, c) != 0);
        }
      }
      CHECK(prod == f);
      for (size_t i = 1; i < fac.factors.size(); ++i) CHECK(poly_order(fac.factors[i - 1].first, fac.factors[i].first));
    }
  }
}

TEST_CASE("factor rejects the zero polynomial") {
  FieldPtr F3 = Field::prime(3);
  CHECK_THROWS_AS(factor(*F3, Poly{}), DomainError);
}

TEST_CASE("rational functions are reduced with monic denominators") {
  FieldPtr Ft = parse_field("F5(t)");
  Elem a = Ft->ratfunc(parse_poly(Ft->base(), "t^2-1"), parse_poly(Ft->base(), "2*t-2"));
  const auto& r = std::get<RatFunc>(a);
  CHECK(r.den == poly::constant(1));
  // (t+1)/2 = 3t + 3
  CHECK(r.num == parse_poly(Ft->base(), "3*t+3"));
  Elem t = Ft->variable("t");
  CHECK(Ft->is_one(Ft->mul(t, Ft->inv(t))));
  CHECK(Ft->str(Ft->div(Ft->one(), Ft->add(t, Ft->one()))) == "1/(t+1)");
}

TEST_CASE("real model uses sign as square class") {
  FieldPtr R = Field::real();
  CHECK(R->is_square(R->from_int(7)));
  CHECK_FALSE(R->is_square(R->from_int(-2)));
  CHECK(R->str(R->div(R->from_int(3), R->from_int(-6))) == "-1/2");
}

TEST_CASE("field syntax errors") {
  CHECK_THROWS_AS(parse_field("F4"), DomainError);
  CHECK_THROWS_AS(parse_field("F2"), DomainError);
  CHECK_THROWS_AS(parse_field("F9=F3[x]/(x^2+2)"), DomainError);
  CHECK_THROWS_AS(parse_field("F25=F3[x]/(x^2+1)"), DomainError);
  CHECK(parse_field("F9=F3[x]/(x^2+1)")->key() == parse_field("F9")->key());
}
