#include <doctest.h>

#include <set>

#include "mwcalc/forms.hpp"
#include "mwcalc/text.hpp"

using namespace mwcalc;

namespace {

// Euler's criterion over F_p with plain integers.
bool legendre_square(int64_t a, int64_t p) {
  a %= p;
  if (a < 0) a += p;
  int64_t r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1;
}

GWForm ints(const FieldPtr& F, std::vector<int64_t> plus, std::vector<int64_t> minus = {}) {
  GWForm f = gw_zero(F);
  for (auto a : plus) f.plus.push_back(F->from_int(a));
  for (auto b : minus) f.minus.push_back(F->from_int(b));
  return f;
}

}  // namespace

TEST_CASE("Milnor presentation relation <u>+<v> = <u+v> + <(u+v)uv> over F7") {
  FieldPtr F = Field::prime(7);
  CHECK(gw_equal(ints(F, {1, 1}), ints(F, {2, 2})));
  for (int64_t u = 1; u < 7; ++u) {
    for (int64_t v = 1; v < 7; ++v) {
      if ((u + v) % 7 == 0) continue;
      CHECK(gw_equal(ints(F, {u, v}), ints(F, {u + v, (u + v) * u * v})));
    }
  }
}

TEST_CASE("<a> h has rank 2 and discriminant -1 for every a in F7") {
  FieldPtr F = Field::prime(7);
  for (int64_t a = 1; a < 7; ++a) {
    GWInvariants inv = invariants(gw_mul(ints(F, {a}), hyperbolic(F)));
    CHECK(inv.rank == 2);
    CHECK(inv.disc == (legendre_square(-1, 7) ? 1 : -1));
    CHECK(gw_equal(gw_mul(ints(F, {1}), ints(F, {a, 3})), ints(F, {a, 3})));
  }
}

TEST_CASE("invariants match rank and Legendre discriminant") {
  for (int64_t p : {3, 5, 7, 11, 13}) {
    FieldPtr F = Field::prime(static_cast<uint32_t>(p));
    for (int64_t a = 1; a < p; ++a) {
      for (int64_t b = 1; b < p; ++b) {
        for (int64_t c = 1; c < p; ++c) {
          GWForm f = ints(F, {a, b}, {c});
          GWInvariants inv = invariants(f);
          CHECK(inv.rank == 1);
          // det of <a,b> - <c> is a b / c, same square class as a b c
          CHECK(inv.disc == (legendre_square(a * b * c, p) ? 1 : -1));
        }
      }
    }
  }
}

TEST_CASE("W(F_q) has four classes with the documented representatives") {
  for (uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
    FieldPtr F = parse_field("F" + std::to_string(q));
    std::set<WittClass> seen;
    std::vector<GWForm> reps;
    for (uint32_t a = 1; a < q; ++a) {
      for (uint32_t b = 1; b < q; ++b) {
        for (const GWForm& f : {diag(F, {Elem{a}}), diag(F, {Elem{a}, Elem{b}}), gw_sub(diag(F, {Elem{a}}), diag(F, {Elem{b}}))}) {
          seen.insert(witt_of(*F, class_of(f)));
        }
      }
    }
    CHECK(seen.size() == 4);
    for (const WittClass& w : seen) {
      GWForm rep = witt_representative(F, w);
      CHECK(witt_of(*F, class_of(rep)) == w);
      // Anisotropic: no hyperbolic plane splits off a rank-2 representative.
      if (rep.rank() == 2) CHECK_FALSE(witt_equal(rep, gw_zero(F)));
    }
    Elem u0{F->least_nonsquare()};
    bool one_mod_four = q % 4 == 1;
    GWForm two = one_mod_four ? diag(F, {F->one(), u0}) : diag(F, {F->one(), F->one()});
    CHECK(form_str(witt_representative(F, witt_of(*F, class_of(two)))) == form_str(two));
  }
}

TEST_CASE("Pfister forms generate I^n and I^2 vanishes over F_q") {
  for (uint32_t q : {3u, 5u, 9u}) {
    FieldPtr F = parse_field("F" + std::to_string(q));
    for (uint32_t a = 1; a < q; ++a) {
      GWForm p1 = pfister(F, {Elem{a}});
      CHECK(in_I_power(p1, 1));
      // signed discriminant of <-1,a> is a
      CHECK(sbar_n(p1, 1) == (F->fis_square(a) ? 0 : 1));
      for (uint32_t b = 1; b < q; ++b) {
        GWForm p2 = pfister(F, {Elem{a}, Elem{b}});
        CHECK(in_I_power(p2, 2));
        CHECK(witt_equal(p2, gw_zero(F)));
      }
    }
    CHECK(gw_equal(pfister(F, {}), diag(F, {F->one()})));
  }
}

TEST_CASE("n_eps: even n gives (n/2) h, odd n adds <1>") {
  FieldPtr F = Field::prime(7);
  for (int64_t n = -5; n <= 5; ++n) {
    GWForm want = gw_scale(hyperbolic(F), n / 2);
    if (n % 2 != 0) want = gw_add(want, n > 0 ? diag(F, {F->one()}) : epsilon_form(F));
    CHECK(gw_equal(n_epsilon(F, n), want));
  }
  CHECK(gw_equal(epsilon_form(F), gw_neg(ints(F, {-1}))));
}

TEST_CASE("real model carries the signature") {
  FieldPtr R = Field::real();
  GWInvariants inv = invariants(ints(R, {1, -1, -3, 2, 5}));
  CHECK(inv.has_signature);
  CHECK(inv.signature == 1);
  CHECK(inv.rank == 5);
  CHECK(witt_equal(hyperbolic(R), gw_zero(R)));
  CHECK_FALSE(witt_equal(ints(R, {1, 1}), gw_zero(R)));
}

TEST_CASE("form errors") {
  CHECK_THROWS_AS(gw_add(ints(Field::prime(5), {1}), ints(Field::prime(7), {1})), DomainError);
  CHECK_THROWS_AS(invariants(diag(parse_field("F5(t)"), {parse_field("F5(t)")->one()})), DomainError);
  CHECK_THROWS_AS(diag(Field::prime(5), {Elem{0u}}), DomainError);
}
