#include "mwcalc/mw.hpp"

#include "mwcalc/residue.hpp"

namespace mwcalc {

namespace {

int64_t mod(int64_t x, int64_t m) { return ((x % m) + m) % m; }

void require_finite(const Field& F, const char* what) {
  if (!F.is_finite()) throw DomainError(std::string(what) + " requires a finite field (field " + F.key() + ")");
}

// Degree-agnostic zero: an empty operand adopts the other operand's degree.
int merged_degree(const MWExpr& x, const MWExpr& y) {
  if (x.is_zero()) return y.degree();
  if (y.is_zero()) return x.degree();
  if (x.degree() != y.degree()) {
    throw DomainError("inhomogeneous sum: degrees " + std::to_string(x.degree()) + " and " + std::to_string(y.degree()));
  }
  return x.degree();
}

bool has_unit_slot(const Field& F, const std::vector<Elem>& s) {
  for (const auto& a : s) {
    if (F.is_one(a)) return true;
  }
  return false;
}

}  // namespace

MWExpr MWExpr::constant(const FieldPtr& F, int64_t n) {
  MWExpr r(F, 0);
  r.add_term(0, {}, n);
  return r;
}

MWExpr MWExpr::symbol(const FieldPtr& F, std::vector<Elem> slots, int eta, int64_t coeff) {
  MWExpr r(F, static_cast<int>(slots.size()) - eta);
  r.add_term(eta, std::move(slots), coeff);
  return r;
}

void MWExpr::add_term(int eta, std::vector<Elem> slots, int64_t coeff) {
  add_term(TermKey{eta, std::move(slots)}, coeff);
}

void MWExpr::add_term(const TermKey& key, int64_t coeff) {
  if (key.eta < 0) throw DomainError("negative eta power");
  if (static_cast<int>(key.slots.size()) - key.eta != degree_) {
    throw DomainError("inhomogeneous term: expected degree " + std::to_string(degree_));
  }
  for (const auto& a : key.slots) {
    if (field_->is_zero(a)) throw DomainError("zero slot");
  }
  if (coeff == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff);
  } else if ((it->second += coeff) == 0) {
    terms_.erase(it);
  }
}

bool MWExpr::operator==(const MWExpr& o) const {
  if (!same_field(*field_, *o.field_)) return false;
  if (terms_.empty() && o.terms_.empty()) return true;
  return degree_ == o.degree_ && terms_ == o.terms_;
}

MWExpr bracket(const FieldPtr& F, const Elem& a) { return MWExpr::symbol(F, {a}); }

MWExpr symbols(const FieldPtr& F, const std::vector<Elem>& a) { return MWExpr::symbol(F, a); }

MWExpr eta(const FieldPtr& F, int power) { return MWExpr::symbol(F, {}, power); }

MWExpr angle(const FieldPtr& F, const Elem& u) {
  if (F->is_zero(u)) throw DomainError("zero slot");
  MWExpr r = MWExpr::constant(F, 1);
  if (!F->is_one(u)) r.add_term(1, {u}, 1);
  return r;
}

MWExpr h_expr(const FieldPtr& F) {
  MWExpr r = MWExpr::constant(F, 2);
  r.add_term(1, {F->from_int(-1)}, 1);
  return r;
}

MWExpr eps_expr(const FieldPtr& F) { return mw_neg(angle(F, F->from_int(-1))); }

MWExpr n_eps_expr(const FieldPtr& F, int64_t n) {
  MWExpr r = MWExpr::constant(F, n);
  if (n > 0) r.add_term(1, {F->from_int(-1)}, n / 2);
  if (n < 0) r.add_term(1, {F->from_int(-1)}, -((-n + 1) / 2));
  return r;
}

MWExpr mw_add(const MWExpr& x, const MWExpr& y) {
  require_same(*x.field(), *y.field());
  MWExpr r(x.field(), merged_degree(x, y));
  for (const auto& [k, c] : x.terms()) r.add_term(k, c);
  for (const auto& [k, c] : y.terms()) r.add_term(k, c);
  return r;
}

MWExpr mw_neg(const MWExpr& x) { return mw_scale(x, -1); }

MWExpr mw_sub(const MWExpr& x, const MWExpr& y) { return mw_add(x, mw_neg(y)); }

MWExpr mw_scale(const MWExpr& x, int64_t n) {
  MWExpr r(x.field(), x.degree());
  for (const auto& [k, c] : x.terms()) r.add_term(k, c * n);
  return r;
}

MWExpr mw_mul(const MWExpr& x, const MWExpr& y) {
  require_same(*x.field(), *y.field());
  MWExpr r(x.field(), x.degree() + y.degree());
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      TermKey k{kx.eta + ky.eta, kx.slots};
      k.slots.insert(k.slots.end(), ky.slots.begin(), ky.slots.end());
      r.add_term(k, cx * cy);
    }
  }
  return r;
}

MWExpr mw_mul(const std::vector<MWExpr>& factors) {
  if (factors.empty()) throw DomainError("empty product");
  MWExpr r = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) r = mw_mul(r, factors[i]);
  return r;
}

MWExpr simplify(const MWExpr& x) {
  const Field& F = *x.field();
  const Elem one = F.one();
  const Elem m1 = F.from_int(-1);
  MWExpr r(x.field(), x.degree());
  for (const auto& [key, c] : x.terms()) {
    TermKey k = key;
    if (has_unit_slot(F, k.slots)) continue;
    bool dead = false;
    for (size_t i = 0; i < k.slots.size() && !dead; ++i) {
      for (size_t j = i + 1; j < k.slots.size() && !dead; ++j) {
        Elem s = F.add(k.slots[i], k.slots[j]);
        // [a,1-a] = 0 and [a,-a] = 0, moved into adjacency up to a unit.
        dead = F.is_zero(s) || F.is_one(s);
      }
    }
    if (dead) continue;
    for (size_t i = 0; i + 1 < k.slots.size(); ++i) {
      if (k.slots[i] == k.slots[i + 1] && k.slots[i] != m1) k.slots[i] = m1;
    }
    r.add_term(k, c);
  }
  return r;
}

MWExpr drop_unit_slots(const MWExpr& x) {
  MWExpr r(x.field(), x.degree());
  for (const auto& [k, c] : x.terms()) {
    if (!has_unit_slot(*x.field(), k.slots)) r.add_term(k, c);
  }
  return r;
}

MWExpr to_milnor(const MWExpr& x) {
  MWExpr r(x.field(), x.degree());
  for (const auto& [k, c] : x.terms()) {
    if (k.eta == 0) r.add_term(k, c);
  }
  return r;
}

MilnorValue milnor_invariant(const MWExpr& x) {
  const Field& F = *x.field();
  require_finite(F, "milnor_invariant");
  MilnorValue v{x.degree(), 0, 0};
  if (x.degree() == 0) {
    for (const auto& [k, c] : x.terms()) {
      if (k.eta == 0) v.value += c;
    }
  } else if (x.degree() == 1) {
    v.modulus = F.size() - 1;
    for (const auto& [k, c] : x.terms()) {
      if (k.eta == 0) v.value = mod(v.value + mod(c, v.modulus) * F.flog(std::get<uint32_t>(k.slots[0])), v.modulus);
    }
  }
  return v;
}

WittClass j_n(const MWExpr& x) {
  const Field& F = *x.field();
  require_classifiable(F);
  GWClass acc;
  for (const auto& [k, c] : x.terms()) acc = class_add(acc, class_scale(pfister_class(F, k.slots), c));
  return witt_of(F, acc);
}

MWInvariantPair invariant_pair(const MWExpr& x) { return MWInvariantPair{milnor_invariant(x), j_n(x)}; }

GWForm mw0_to_gw(const MWExpr& x) {
  if (!x.is_zero() && x.degree() != 0) throw DomainError("mw0_to_gw expects a degree-0 expression");
  const FieldPtr& F = x.field();
  GWForm r = gw_zero(F);
  for (const auto& [k, c] : x.terms()) {
    // eta^m [a1..am] = prod (eta [ai]) -> prod (<ai> - 1)
    GWForm t = diag(F, {F->one()});
    for (const auto& a : k.slots) t = gw_mul(t, GWForm{F, {a}, {F->one()}});
    r = gw_add(r, gw_scale(t, c));
  }
  return r;
}

GWClass mw0_class(const MWExpr& x) {
  if (!x.is_zero() && x.degree() != 0) throw DomainError("mw0_class expects a degree-0 expression");
  const Field& F = *x.field();
  require_classifiable(F);
  GWClass acc;
  const GWClass minus_one_form = class_neg(unit_class(F, F.one()));
  for (const auto& [k, c] : x.terms()) {
    GWClass t{1, F.is_real() ? 1 : 0};
    for (const auto& a : k.slots) t = class_mul(F, t, class_add(unit_class(F, a), minus_one_form));
    acc = class_add(acc, class_scale(t, c));
  }
  if (F.is_finite()) acc.aux = mod(acc.aux, 2);
  return acc;
}

MWExpr gw_to_mw0(const GWForm& f) {
  MWExpr r(f.field, 0);
  for (const auto& a : f.plus) r = mw_add(r, angle(f.field, a));
  for (const auto& a : f.minus) r = mw_sub(r, angle(f.field, a));
  return r;
}

MWExpr h_n(const FieldPtr& F, const std::vector<Elem>& a) {
  if (a.empty()) throw DomainError("h_n needs at least one entry");
  std::vector<Elem> s = a;
  s[0] = F->mul(a[0], a[0]);
  return drop_unit_slots(MWExpr::symbol(F, s));
}

namespace {

Tri real_compare(const MWExpr& x, const MWExpr& y) {
  if (simplify(x) == simplify(y)) return Tri::Yes;
  MWExpr z = mw_sub(x, y);
  const Field& F = *z.field();
  if (!j_n(z).is_zero()) return Tri::No;
  if (z.degree() == 0) {
    int64_t n = 0;
    for (const auto& [k, c] : z.terms()) {
      if (k.eta == 0) n += c;
    }
    if (n != 0) return Tri::No;
  }
  if (z.degree() == 1) {
    Elem prod = F.one();
    for (const auto& [k, c] : z.terms()) {
      if (k.eta == 0) prod = F.mul(prod, F.pow(k.slots[0], c));
    }
    if (!F.is_one(prod)) return Tri::No;
  }
  return Tri::Undecided;
}

}  // namespace

Tri mw_compare(const MWExpr& x, const MWExpr& y) {
  require_same(*x.field(), *y.field());
  const Field& F = *x.field();
  if (F.is_real()) return real_compare(x, y);
  MWExpr z = mw_sub(x, y);
  if (z.is_zero()) return Tri::Yes;
  if (F.is_finite()) {
    MWInvariantPair p = invariant_pair(z);
    return p.milnor.value == 0 && p.form.is_zero() ? Tri::Yes : Tri::No;
  }
  return function_field_is_zero(z) ? Tri::Yes : Tri::No;
}

bool mw_equal(const MWExpr& x, const MWExpr& y) {
  if (x.field()->is_real()) throw DomainError("equality over the real model is three-valued; use mw_compare");
  return mw_compare(x, y) == Tri::Yes;
}

bool mw_is_zero(const MWExpr& x) { return mw_equal(x, MWExpr(x.field(), x.degree())); }

MWExpr normal_form(const MWExpr& x) {
  const FieldPtr& F = x.field();
  require_finite(*F, "normal_form");
  const int d = x.degree();
  MWExpr r(F, d);
  const Elem u0 = F->least_nonsquare();
  if (d >= 2) return r;
  if (d == 1) {
    MilnorValue v = milnor_invariant(x);
    if (v.value != 0) r.add_term(0, {F->fexp(v.value)}, 1);
    return r;
  }
  if (d == 0) {
    GWClass c = mw0_class(x);
    r.add_term(0, {}, c.rank);
    if (c.aux != 0) r.add_term(1, {u0}, 1);
    return r;
  }
  const int k = -d;
  WittClass w = j_n(x);
  if (w.is_zero()) return r;
  if (w.a == 1) {
    r.add_term(k, {}, 1);
    if (w.b == 1) r.add_term(k + 1, {u0}, 1);
    return r;
  }
  r.add_term(k, {}, 2);
  if (F->fis_square(F->minus_one())) r.add_term(k + 1, {u0}, 1);
  return r;
}

MWExpr map_slots(const MWExpr& x, const FieldPtr& target, const std::function<Elem(const Elem&)>& f) {
  MWExpr r(target, x.degree());
  for (const auto& [k, c] : x.terms()) {
    TermKey m{k.eta, {}};
    m.slots.reserve(k.slots.size());
    for (const auto& a : k.slots) m.slots.push_back(f(a));
    r.add_term(m, c);
  }
  return r;
}

MWExpr pullback(const MWExpr& x, const FieldPtr& function_field) {
  if (!function_field->is_function_field() || !same_field(*function_field->base(), *x.field())) {
    throw DomainError("pullback target must be the rational function field over the owner field");
  }
  const Field& Ft = *function_field;
  return map_slots(x, function_field, [&](const Elem& a) { return Ft.constant(std::get<uint32_t>(a)); });
}

}  // namespace mwcalc
