#include "mwcalc/forms.hpp"

namespace mwcalc {

namespace {

int64_t mod2(int64_t x) { return ((x % 2) + 2) % 2; }

int64_t floor_div2(int64_t x) { return (x - mod2(x)) / 2; }

int64_t minus_one_bit(const Field& F) { return F.fis_square(F.minus_one()) ? 0 : 1; }

}  // namespace

void require_classifiable(const Field& F) {
  if (!F.is_finite() && !F.is_real()) {
    throw DomainError("invariants are only available over finite fields and the real model (field " + F.key() + ")");
  }
}

GWForm diag(const FieldPtr& F, std::vector<Elem> entries) {
  for (const auto& e : entries) {
    if (F->is_zero(e)) throw DomainError("diagonal form entries must be nonzero");
  }
  return GWForm{F, std::move(entries), {}};
}

GWForm gw_zero(const FieldPtr& F) { return GWForm{F, {}, {}}; }

GWForm gw_add(const GWForm& x, const GWForm& y) {
  require_same(*x.field, *y.field);
  GWForm r = x;
  r.plus.insert(r.plus.end(), y.plus.begin(), y.plus.end());
  r.minus.insert(r.minus.end(), y.minus.begin(), y.minus.end());
  return r;
}

GWForm gw_neg(const GWForm& x) { return GWForm{x.field, x.minus, x.plus}; }

GWForm gw_sub(const GWForm& x, const GWForm& y) { return gw_add(x, gw_neg(y)); }

GWForm gw_mul(const GWForm& x, const GWForm& y) {
  require_same(*x.field, *y.field);
  const Field& F = *x.field;
  GWForm r{x.field, {}, {}};
  auto products = [&](const std::vector<Elem>& a, const std::vector<Elem>& b, std::vector<Elem>& out) {
    for (const auto& u : a) {
      for (const auto& v : b) out.push_back(F.mul(u, v));
    }
  };
  products(x.plus, y.plus, r.plus);
  products(x.minus, y.minus, r.plus);
  products(x.plus, y.minus, r.minus);
  products(x.minus, y.plus, r.minus);
  return r;
}

GWForm gw_scale(const GWForm& x, int64_t n) {
  GWForm r{x.field, {}, {}};
  const GWForm& src = n >= 0 ? x : gw_neg(x);
  for (int64_t i = 0; i < (n >= 0 ? n : -n); ++i) r = gw_add(r, src);
  return r;
}

GWClass unit_class(const Field& F, const Elem& u) {
  require_classifiable(F);
  if (F.is_real()) return GWClass{1, std::get<Rational>(u) > 0 ? 1 : -1};
  return GWClass{1, F.is_square(u) ? 0 : 1};
}

GWClass class_add(const GWClass& x, const GWClass& y) { return GWClass{x.rank + y.rank, x.aux + y.aux}; }

GWClass class_neg(const GWClass& x) { return GWClass{-x.rank, -x.aux}; }

GWClass class_scale(const GWClass& x, int64_t n) { return GWClass{x.rank * n, x.aux * n}; }

GWClass class_mul(const Field& F, const GWClass& x, const GWClass& y) {
  if (F.is_real()) return GWClass{x.rank * y.rank, x.aux * y.aux};
  return GWClass{x.rank * y.rank, mod2(y.rank * x.aux + x.rank * y.aux)};
}

GWClass class_of(const GWForm& x) {
  const Field& F = *x.field;
  require_classifiable(F);
  GWClass c;
  for (const auto& u : x.plus) c = class_add(c, unit_class(F, u));
  for (const auto& u : x.minus) c = class_add(c, class_neg(unit_class(F, u)));
  if (F.is_finite()) c.aux = mod2(c.aux);
  return c;
}

GWClass pfister_class(const Field& F, const std::vector<Elem>& a) {
  GWClass c = unit_class(F, F.one());
  GWClass m1 = unit_class(F, F.from_int(-1));
  for (const auto& u : a) c = class_mul(F, c, class_add(m1, unit_class(F, u)));
  if (F.is_finite()) c.aux = mod2(c.aux);
  return c;
}

WittClass witt_of(const Field& F, const GWClass& x) {
  require_classifiable(F);
  if (F.is_real()) return WittClass{x.aux, 0};
  int64_t r0 = mod2(x.rank);
  int64_t k = (x.rank - r0) / 2;
  return WittClass{r0, mod2(x.aux - k * minus_one_bit(F))};
}

GWClass class_from(const Field& F, int64_t rank, const WittClass& w) {
  require_classifiable(F);
  if (F.is_real()) return GWClass{rank, w.a};
  int64_t k = floor_div2(rank - w.a);
  return GWClass{rank, mod2(w.b + k * minus_one_bit(F))};
}

GWInvariants invariants(const GWForm& x) {
  const Field& F = *x.field;
  require_classifiable(F);
  GWClass c = class_of(x);
  GWInvariants inv;
  inv.rank = c.rank;
  if (F.is_real()) {
    int neg = 0;
    for (const auto& u : x.plus) neg += std::get<Rational>(u) < 0;
    for (const auto& u : x.minus) neg += std::get<Rational>(u) < 0;
    inv.disc = neg % 2 == 0 ? 1 : -1;
    inv.has_signature = true;
    inv.signature = c.aux;
  } else {
    inv.disc = c.aux == 0 ? 1 : -1;
  }
  return inv;
}

bool gw_equal(const GWForm& x, const GWForm& y) {
  require_same(*x.field, *y.field);
  return class_of(x) == class_of(y);
}

bool witt_equal(const GWForm& x, const GWForm& y) {
  require_same(*x.field, *y.field);
  return witt_of(*x.field, class_of(gw_sub(x, y))).is_zero();
}

GWForm pfister(const FieldPtr& F, const std::vector<Elem>& a) {
  GWForm r = diag(F, {F->one()});
  for (const auto& u : a) r = gw_mul(r, diag(F, {F->from_int(-1), u}));
  return r;
}

bool in_I_power(const GWForm& x, int n) {
  const Field& F = *x.field;
  if (n <= 0) return true;
  WittClass w = witt_of(F, class_of(x));
  if (F.is_real()) return w.a % (int64_t(1) << std::min(n, 62)) == 0;
  if (n == 1) return w.a == 0;
  return w.is_zero();
}

int sbar_n(const GWForm& x, int n) {
  if (!in_I_power(x, n)) throw DomainError("sbar_n: form is not in I^n");
  const Field& F = *x.field;
  if (n < 0) return 0;
  WittClass w = witt_of(F, class_of(x));
  if (F.is_real()) return static_cast<int>(mod2(w.a >> n));
  if (n == 0) return static_cast<int>(w.a);
  if (n == 1) return static_cast<int>(w.b);
  return 0;
}

GWForm hyperbolic(const FieldPtr& F) { return diag(F, {F->one(), F->from_int(-1)}); }

GWForm epsilon_form(const FieldPtr& F) { return gw_neg(diag(F, {F->from_int(-1)})); }

GWForm n_epsilon(const FieldPtr& F, int64_t n) {
  GWForm r = gw_zero(F);
  int64_t m = n >= 0 ? n : -n;
  for (int64_t i = 1; i <= m; ++i) r.plus.push_back(F->from_int(i % 2 == 1 ? 1 : -1));
  if (n < 0) r = gw_mul(epsilon_form(F), r);
  return r;
}

GWForm witt_representative(const FieldPtr& F, const WittClass& w) {
  require_classifiable(*F);
  if (F->is_real()) {
    GWForm r = gw_zero(F);
    for (int64_t i = 0; i < (w.a >= 0 ? w.a : -w.a); ++i) r.plus.push_back(F->from_int(w.a > 0 ? 1 : -1));
    return r;
  }
  Elem u0 = F->least_nonsquare();
  if (w.a == 1) return diag(F, {w.b == 0 ? F->one() : u0});
  if (w.b == 0) return gw_zero(F);
  if (minus_one_bit(*F) == 0) return diag(F, {F->one(), u0});
  return diag(F, {F->one(), F->one()});
}

std::string form_str(const GWForm& x) {
  auto list = [&](const std::vector<Elem>& v) {
    std::string s = "<";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += x.field->str(v[i]);
    }
    return s + ">";
  };
  if (x.plus.empty() && x.minus.empty()) return "0";
  if (x.minus.empty()) return list(x.plus);
  if (x.plus.empty()) return "-" + list(x.minus);
  return list(x.plus) + " - " + list(x.minus);
}

}  // namespace mwcalc
