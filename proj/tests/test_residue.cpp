#include <doctest.h>

#include "mwcalc/poly.hpp"
#include "mwcalc/residue.hpp"
#include "mwcalc/suites.hpp"
#include "mwcalc/text.hpp"

using namespace mwcalc;

namespace {

uint32_t idx(const Elem& e) { return std::get<uint32_t>(e); }

// Determinant by Gaussian elimination over a finite field.
uint32_t det(const Field& F, std::vector<std::vector<uint32_t>> G) {
  size_t n = G.size();
  uint32_t d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t r = c;
    while (r < n && G[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(G[r], G[c]);
      d = F.fneg(d);
    }
    d = F.fmul(d, G[c][c]);
    for (size_t i = c + 1; i < n; ++i) {
      uint32_t m = F.fdiv(G[i][c], G[c][c]);
      for (size_t j = c; j < n; ++j) G[i][j] = F.fsub(G[i][j], F.fmul(m, G[c][j]));
    }
  }
  return d;
}

// Gram matrix of (x, y) -> f(a x y) on the basis 1, s, ..., s^(d-1), where f
// reads the coefficient of s^(d-1).
std::vector<std::vector<uint32_t>> scharlau_gram(const Field& K, const Field& F, const Poly& p, uint32_t a) {
  int d = p.degree();
  uint32_t s = residue_generator(K, F, p);
  std::vector<std::vector<uint32_t>> G(d, std::vector<uint32_t>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      uint32_t z = K.fmul(a, K.fpow(s, i + j));
      G[i][j] = d == 1 ? z : K.coords(z)[d - 1];
    }
  return G;
}

}  // namespace

TEST_CASE("valuation and unit reconstruct the element") {
  FieldPtr Ft = parse_field("F5(t)");
  Sampler s(3);
  std::vector<ValuationSpec> places{parse_place(Ft, "t"), parse_place(Ft, "t^2+2"), ValuationSpec::at_infinity()};
  for (int trial = 0; trial < 200; ++trial) {
    Elem f = s.ratfunc(*Ft, 4);
    for (const auto& v : places) {
      ValuationUnit vu = valuation_and_unit(*Ft, f, v);
      CHECK(valuation(*Ft, vu.u, v) == 0);
      Elem back = Ft->mul(vu.u, Ft->pow(uniformizer(*Ft, v), vu.n));
      CHECK(Ft->is_zero(Ft->sub(back, f)));
    }
  }
  CHECK(valuation(*Ft, parse_elem(Ft, "t^3/(t+1)"), ValuationSpec::at_infinity()) == -2);
  CHECK(valuation(*Ft, parse_elem(Ft, "(t^2+2)^2*t"), parse_place(Ft, "t^2+2")) == 2);
}

TEST_CASE("residue of [u pi, b] is <u>[b]") {
  FieldPtr Ft = parse_field("F5(t)");
  FieldPtr F = parse_field("F5");
  ValuationSpec v = parse_place(Ft, "t");
  Elem pi = parse_elem(Ft, "t");
  for (int u = 1; u < 5; ++u)
    for (int b = 1; b < 5; ++b) {
      Elem f = Ft->mul(Ft->constant(static_cast<uint32_t>(u)), pi);
      MWExpr x = symbols(Ft, {f, Ft->constant(static_cast<uint32_t>(b))});
      MWExpr expect = mw_mul(angle(F, F->from_int(u)), bracket(F, F->from_int(b)));
      CHECK(mw_equal(residue(x, v, pi), expect));
    }
  // [t, -1] with pi = 2t: t = 2^-1 pi.
  MWExpr r = residue(parse_mw(Ft, "[t,-1]"), v, parse_elem(Ft, "2*t"));
  CHECK(mw_equal(r, mw_mul(angle(F, F->inv(F->from_int(2))), bracket(F, F->from_int(-1)))));
}

TEST_CASE("residue rules for units, eta and <u>") {
  FieldPtr Ft = parse_field("F3(t)");
  Sampler s(8);
  for (const char* place : {"t", "t+1", "t^2+1", "inf"}) {
    ValuationSpec v = parse_place(Ft, place);
    FieldPtr K = residue_field_at(Ft, v);
    Elem pi = uniformizer(*Ft, v);
    for (int trial = 0; trial < 40; ++trial) {
      // A unit at v: ratio of polynomials coprime to p (or of equal degree at infinity).
      Elem u;
      do {
        u = s.ratfunc(*Ft, 3);
      } while (valuation(*Ft, u, v) != 0);
      Elem w;
      do {
        w = s.ratfunc(*Ft, 3);
      } while (valuation(*Ft, w, v) != 0);
      Elem ubar = reduce(*Ft, u, v, *K), wbar = reduce(*Ft, w, v, *K);
      CHECK(mw_is_zero(residue(symbols(Ft, {u, w}), v)));
      CHECK(mw_equal(residue(symbols(Ft, {pi, u}), v), bracket(K, ubar)));
      MWExpr a = symbols(Ft, {pi, w});
      CHECK(mw_equal(residue(mw_mul(eta(Ft), a), v), mw_mul(eta(K), bracket(K, wbar))));
      CHECK(mw_equal(residue(mw_mul(angle(Ft, u), a), v), mw_mul(angle(K, ubar), bracket(K, wbar))));
      // [u][pi, w] = eps [ubar][wbar] after the residue.
      CHECK(mw_equal(residue(mw_mul(bracket(Ft, u), a), v), mw_mul({eps_expr(K), bracket(K, ubar), bracket(K, wbar)})));
    }
  }
}

TEST_CASE("transfer of <1> along a quadratic extension is hyperbolic") {
  FieldPtr F = parse_field("F3");
  Poly p = parse_poly(F, "t^2+1");
  FieldPtr K = residue_field(F, p);
  GWForm tr = scharlau_transfer(diag(K, {K->one()}), F, p);
  CHECK(gw_equal(tr, hyperbolic(F)));
  CHECK(mw_equal(geometric_transfer(parse_mw(K, "1"), F, p), h_expr(F)));
  auto G = scharlau_gram(*K, *F, p, idx(K->one()));
  CHECK(G == std::vector<std::vector<uint32_t>>{{0, 1}, {1, 0}});
}

TEST_CASE("Scharlau transfer matches the Gram matrix oracle") {
  for (auto [base, ext] : std::vector<std::pair<const char*, const char*>>{
           {"F3", "t^2+1"}, {"F5", "t^2+2"}, {"F3", "t^3+2*t+1"}, {"F7", "t-3"}, {"F5", "t^3+t+1"}}) {
    FieldPtr F = parse_field(base);
    Poly p = parse_poly(F, ext);
    FieldPtr K = residue_field(F, p);
    for (uint32_t a = 1; a < K->size(); ++a) {
      GWForm tr = scharlau_transfer(diag(K, {Elem{a}}), F, p);
      auto G = scharlau_gram(*K, *F, p, a);
      uint32_t dg = det(*F, G);
      REQUIRE(dg != 0);
      uint32_t dt = 1;
      for (const auto& e : tr.plus) dt = F->fmul(dt, idx(e));
      for (const auto& e : tr.minus) dt = F->fdiv(dt, idx(e));
      CHECK(tr.rank() == p.degree());
      CHECK(F->fis_square(dg) == F->fis_square(dt));

      std::vector<uint32_t> dd = diagonalize_symmetric(*F, G);
      uint32_t prod = 1;
      for (uint32_t e : dd) prod = F->fmul(prod, e);
      CHECK(dd.size() == G.size());
      CHECK(F->fis_square(prod) == F->fis_square(dg));
    }
  }
}

TEST_CASE("split exactness reconstructs elements of F(t)") {
  FieldPtr Ft = parse_field("F5(t)");
  FieldPtr F = parse_field("F5");
  Sampler s(21);
  for (int trial = 0; trial < 60; ++trial) {
    MWExpr x = s.expr(Ft, static_cast<int>(s.uniform(0, 2)), 2, 1, 2);
    Reconstruction rc = reconstruct(x);
    CHECK(function_field_is_zero(mw_sub(x, mw_add(pullback(rc.constant, Ft), rc.lift))));
    MWExpr c = s.expr(F, static_cast<int>(s.uniform(0, 2)), 2, 1);
    CHECK(mw_equal(constant_part(pullback(c, Ft)), c));
  }
  CHECK_FALSE(function_field_is_zero(parse_mw(Ft, "[t]")));
  CHECK(function_field_is_zero(parse_mw(Ft, "[t,1-t]")));
}

TEST_CASE("residue argument errors") {
  FieldPtr Ft = parse_field("F5(t)");
  CHECK_THROWS_AS(residue(parse_mw(Ft, "[t]"), parse_place(Ft, "t"), parse_elem(Ft, "t^2")), DomainError);
  CHECK_THROWS_AS(parse_place(Ft, "t^2+1"), DomainError);
}
