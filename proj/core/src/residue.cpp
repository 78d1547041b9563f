#include "mwcalc/residue.hpp"

#include <algorithm>
#include <map>

#include "mwcalc/factor.hpp"
#include "mwcalc/poly.hpp"

namespace mwcalc {

namespace {

const Field& require_function_field(const MWExpr& x) {
  const Field& Ft = *x.field();
  if (!Ft.is_function_field()) throw DomainError("residues need an expression over F_q(t) (field " + Ft.key() + ")");
  return Ft;
}

// Valuation of a nonzero polynomial at a monic irreducible p, plus the cofactor.
std::pair<int64_t, Poly> strip(const Field& B, Poly f, const Poly& p) {
  int64_t n = 0;
  while (true) {
    auto [q, r] = poly::divmod(B, f, p);
    if (!r.is_zero()) break;
    f = std::move(q);
    ++n;
  }
  return {n, f};
}

uint32_t poly_to_residue(const Field& K, const Field& B, const Poly& f, const Poly& p) {
  Poly r = poly::mod(B, f, p);
  if (p.degree() == 1) return r.coeff(0);
  std::vector<uint32_t> c(p.degree(), 0);
  for (int i = 0; i < p.degree(); ++i) c[i] = r.coeff(i);
  return K.from_coords(c);
}

std::string fresh_var(const Field& F, const std::string& stem) {
  if (!F.has_variable(stem)) return stem;
  for (int i = 2;; ++i) {
    std::string v = stem + std::to_string(i);
    if (!F.has_variable(v)) return v;
  }
}

// Decomposition of every distinct slot of x at v with respect to pi.
struct SlotData {
  int64_t n;
  Elem ubar;
};

MWExpr residue_impl(const MWExpr& x, const ValuationSpec& v, const std::optional<Elem>& pi) {
  const Field& Ft = require_function_field(x);
  FieldPtr K = residue_field_at(x.field(), v);
  std::optional<Elem> wbar;
  if (pi) {
    ValuationUnit d = valuation_and_unit(Ft, *pi, v);
    if (d.n != 1) throw DomainError("not a uniformizer at " + place_str(Ft, v));
    wbar = reduce(Ft, d.u, v, *K);
  }
  std::map<Elem, SlotData> cache;
  auto data = [&](const Elem& a) -> const SlotData& {
    auto it = cache.find(a);
    if (it != cache.end()) return it->second;
    ValuationUnit d = valuation_and_unit(Ft, a, v);
    Elem ub = reduce(Ft, d.u, v, *K);
    // a = u p^n = u w^-n pi^n
    if (wbar && d.n != 0) ub = K->mul(ub, K->pow(*wbar, -d.n));
    return cache.emplace(a, SlotData{d.n, ub}).first->second;
  };

  const Elem m1 = K->from_int(-1);
  MWExpr out(K, x.degree() - 1);
  for (const auto& [key, coeff] : x.terms()) {
    const size_t r = key.slots.size();
    std::vector<const SlotData*> sd(r);
    std::vector<size_t> ram;
    for (size_t i = 0; i < r; ++i) {
      sd[i] = &data(key.slots[i]);
      if (sd[i]->n != 0) ram.push_back(i);
    }
    if (ram.empty()) continue;
    for (uint64_t mask = 1; mask < (uint64_t(1) << ram.size()); ++mask) {
      std::vector<bool> in(r, false);
      for (size_t b = 0; b < ram.size(); ++b) {
        if (mask >> b & 1) in[ram[b]] = true;
      }
      // Each pi-slot moves left past the unit slots before it.
      int64_t swaps = 0;
      int64_t units_seen = 0;
      size_t chosen = 0;
      for (size_t i = 0; i < r; ++i) {
        if (in[i]) {
          swaps += units_seen;
          ++chosen;
        } else {
          ++units_seen;
        }
      }
      std::vector<Elem> tail(chosen - 1, m1);
      bool dead = false;
      for (size_t i = 0; i < r; ++i) {
        if (in[i]) continue;
        if (K->is_one(sd[i]->ubar)) dead = true;
        tail.push_back(sd[i]->ubar);
      }
      if (dead) continue;
      MWExpr c = MWExpr::constant(K, coeff);
      for (size_t i = 0; i < r; ++i) {
        if (!in[i]) continue;
        c = mw_mul(c, mw_mul(angle(K, sd[i]->ubar), n_eps_expr(K, sd[i]->n)));
      }
      if (swaps % 2 != 0) c = mw_mul(eps_expr(K), c);
      out = mw_add(out, mw_mul(c, MWExpr::symbol(K, std::move(tail), key.eta)));
    }
  }
  return drop_unit_slots(out);
}

// Residue of [t-c] x at t-c, i.e. the specialization of an unramified x at c.
MWExpr specialize(const MWExpr& x, uint32_t c) {
  const Field& Ft = *x.field();
  const Field& B = *Ft.base();
  Poly lin{{B.fneg(c), 1}};
  poly::trim(lin);
  MWExpr tx = mw_mul(bracket(x.field(), Ft.from_poly(lin)), x);
  return residue(tx, ValuationSpec::padic(lin));
}

bool slot_unramified_at(const MWExpr& x, uint32_t c) {
  const Field& B = *x.field()->base();
  for (const auto& [k, coeff] : x.terms()) {
    for (const auto& a : k.slots) {
      const auto& f = std::get<RatFunc>(a);
      if (poly::eval(B, f.num, c) == 0 || poly::eval(B, f.den, c) == 0) return false;
    }
  }
  return true;
}

}  // namespace

bool place_order(const ValuationSpec& a, const ValuationSpec& b) {
  if (a.infinity != b.infinity) return b.infinity;
  if (a.infinity) return false;
  return poly_order(a.p, b.p);
}

std::string place_str(const Field& Ft, const ValuationSpec& v) {
  if (v.infinity) return "inf";
  return Ft.base()->poly_str(v.p, Ft.var());
}

ValuationUnit valuation_and_unit(const Field& Ft, const Elem& f, const ValuationSpec& v) {
  if (!Ft.is_function_field()) throw DomainError("valuations are defined on F_q(t)");
  if (Ft.is_zero(f)) throw DomainError("valuation of zero");
  const Field& B = *Ft.base();
  const auto& x = std::get<RatFunc>(f);
  if (v.infinity) {
    int64_t n = x.den.degree() - x.num.degree();
    return ValuationUnit{n, Ft.mul(f, Ft.pow(uniformizer(Ft, v), -n))};
  }
  auto [a, num] = strip(B, x.num, v.p);
  auto [b, den] = strip(B, x.den, v.p);
  return ValuationUnit{a - b, Ft.ratfunc(num, den)};
}

int64_t valuation(const Field& Ft, const Elem& f, const ValuationSpec& v) { return valuation_and_unit(Ft, f, v).n; }

Elem uniformizer(const Field& Ft, const ValuationSpec& v) {
  if (v.infinity) return Ft.ratfunc(poly::constant(Ft.base()->minus_one()), poly::x());
  return Ft.from_poly(v.p);
}

FieldPtr residue_field(const FieldPtr& F, const Poly& p) {
  if (!F->is_finite()) throw DomainError("residue fields are taken over a finite field");
  if (p.degree() < 1 || p.lead() != 1) throw DomainError("residue_field expects a monic polynomial of positive degree");
  if (!is_irreducible(*F, p)) throw DomainError("residue_field: polynomial is reducible");
  if (p.degree() == 1) return F;
  return Field::extension(F, p, fresh_var(*F, "s"));
}

FieldPtr residue_field_at(const FieldPtr& Ft, const ValuationSpec& v) {
  if (!Ft->is_function_field()) throw DomainError("residue fields need F_q(t)");
  if (v.infinity) return Ft->base();
  return residue_field(Ft->base(), v.p);
}

FieldPtr rational_function_field(const FieldPtr& F) { return Field::function_field(F, F->has_variable("t") ? "T" : "t"); }

Elem reduce(const Field& Ft, const Elem& f, const ValuationSpec& v, const Field& K) {
  if (Ft.is_zero(f)) return K.zero();
  ValuationUnit d = valuation_and_unit(Ft, f, v);
  if (d.n > 0) return K.zero();
  if (d.n < 0) throw DomainError("reduce: element has a pole at " + place_str(Ft, v));
  const Field& B = *Ft.base();
  const auto& x = std::get<RatFunc>(f);
  if (v.infinity) return B.fdiv(x.num.lead(), x.den.lead());
  return K.fdiv(poly_to_residue(K, B, x.num, v.p), poly_to_residue(K, B, x.den, v.p));
}

Poly lift(const Field& K, const Field& F, uint32_t a) {
  if (same_field(K, F)) {
    Poly r = poly::constant(a);
    poly::trim(r);
    return r;
  }
  Poly r{K.coords(a)};
  poly::trim(r);
  return r;
}

uint32_t residue_generator(const Field& K, const Field& F, const Poly& p) {
  if (p.degree() == 1) return F.fneg(p.coeff(0));
  return std::get<uint32_t>(K.variable(K.var()));
}

MWExpr residue(const MWExpr& x, const ValuationSpec& v) { return residue_impl(x, v, std::nullopt); }

MWExpr residue(const MWExpr& x, const ValuationSpec& v, const Elem& pi) { return residue_impl(x, v, pi); }

TwistedMW residue_twisted(const TwistedMW& x, const ValuationSpec& v) {
  return residue_twisted(x, v, uniformizer(*x.expr.field(), v));
}

TwistedMW residue_twisted(const TwistedMW& x, const ValuationSpec& v, const Elem& pi) {
  const Field& Ft = *x.expr.field();
  TwistedMW n = normalized(x);
  FieldPtr K = residue_field_at(x.expr.field(), v);
  // pi = w pi_v, so pibar^* = wbar^-1 pi_v^*.
  Elem w = Ft.div(pi, uniformizer(Ft, v));
  Elem wbar = reduce(Ft, w, v, *K);
  if (K->is_zero(wbar)) throw DomainError("not a uniformizer at " + place_str(Ft, v));
  GradedLine line;
  line.word.push_back(v.infinity ? infinity_atom() : place_atom(place_str(Ft, v)));
  line = tensor(line, n.line);
  return TwistedMW{residue(n.expr, v, pi), K->inv(wbar), line};
}

std::vector<ValuationSpec> ramification_support(const MWExpr& x) {
  const Field& Ft = require_function_field(x);
  const Field& B = *Ft.base();
  std::vector<Poly> found;
  std::map<Elem, bool> seen;
  for (const auto& [k, c] : x.terms()) {
    for (const auto& a : k.slots) {
      if (!seen.emplace(a, true).second) continue;
      const auto& f = std::get<RatFunc>(a);
      for (const Poly* part : {&f.num, &f.den}) {
        if (part->degree() < 1) continue;
        for (const auto& [q, m] : factor(B, *part).factors) found.push_back(q);
      }
    }
  }
  std::sort(found.begin(), found.end(), poly_order);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<ValuationSpec> out;
  for (auto& q : found) out.push_back(ValuationSpec::padic(std::move(q)));
  return out;
}

ResidueData total_residue(const MWExpr& x, bool with_infinity) {
  ResidueData d;
  for (const auto& v : ramification_support(x)) {
    MWExpr r = residue(x, v);
    if (!r.is_zero() && !mw_is_zero(r)) d.finite.emplace_back(v.p, r);
  }
  if (with_infinity) d.infinity = residue(x, ValuationSpec::at_infinity());
  return d;
}

MWExpr constant_part(const MWExpr& x) {
  const Field& Ft = require_function_field(x);
  const uint32_t q = Ft.base()->size();
  for (uint32_t c = 0; c < q; ++c) {
    if (slot_unramified_at(x, c)) return specialize(x, c);
  }
  for (uint32_t c = 0; c < q; ++c) {
    Poly lin{{Ft.base()->fneg(c), 1}};
    poly::trim(lin);
    if (mw_is_zero(residue(x, ValuationSpec::padic(lin)))) return specialize(x, c);
  }
  throw DomainError("constant_part: no unramified rational place over " + Ft.base()->key() + "; extend scalars");
}

MWExpr section_lift(const MWExpr& beta, const FieldPtr& Ft, const Poly& p) {
  const Field& K = *beta.field();
  const Field& B = *Ft->base();
  MWExpr out(Ft, beta.degree() + 1);
  for (const auto& [k, c] : beta.terms()) {
    TermKey m{k.eta, {Ft->from_poly(p)}};
    for (const auto& b : k.slots) m.slots.push_back(Ft->from_poly(lift(K, B, std::get<uint32_t>(b))));
    out.add_term(m, c);
  }
  return out;
}

Reconstruction reconstruct(const MWExpr& x) {
  require_function_field(x);
  MWExpr rest = x;
  MWExpr L(x.field(), x.degree());
  while (true) {
    ResidueData d = total_residue(rest);
    if (d.finite.empty()) break;
    int top = 0;
    for (const auto& [p, r] : d.finite) top = std::max(top, p.degree());
    for (const auto& [p, r] : d.finite) {
      if (p.degree() != top) continue;
      MWExpr s = section_lift(r, x.field(), p);
      L = mw_add(L, s);
      rest = mw_sub(rest, s);
    }
  }
  const Field& Ft = *x.field();
  const uint32_t q = Ft.base()->size();
  uint32_t c = 0;
  while (c + 1 < q && !slot_unramified_at(rest, c)) ++c;
  if (!slot_unramified_at(rest, c)) c = 0;
  return Reconstruction{specialize(rest, c), L};
}

MWExpr geometric_transfer(const MWExpr& beta, const FieldPtr& F, const Poly& p) {
  const FieldPtr& K = beta.field();
  if (p.degree() == 1) {
    require_same(*K, *F);
    return normal_form(beta);
  }
  if (!K->is_finite() || K->kind() != FieldKind::Ext || !same_field(*K->base(), *F) || K->modulus() != p) {
    throw DomainError("geometric_transfer: the expression must live in F[s]/(p)");
  }
  FieldPtr Ft = rational_function_field(F);
  MWExpr alpha = section_lift(beta, Ft, p);
  MWExpr out = mw_neg(residue(alpha, ValuationSpec::at_infinity()));
  for (const auto& v : ramification_support(alpha)) {
    if (v.p == p) continue;
    MWExpr r = residue(alpha, v);
    if (r.is_zero()) continue;
    out = mw_sub(out, geometric_transfer(r, F, v.p));
  }
  return normal_form(out);
}

std::vector<uint32_t> diagonalize_symmetric(const Field& F, std::vector<std::vector<uint32_t>> G) {
  const size_t n = G.size();
  auto add_multiple = [&](size_t dst, size_t src, uint32_t c) {
    // row and column operation dst += c * src
    for (size_t j = 0; j < n; ++j) G[dst][j] = F.fadd(G[dst][j], F.fmul(c, G[src][j]));
    for (size_t i = 0; i < n; ++i) G[i][dst] = F.fadd(G[i][dst], F.fmul(c, G[i][src]));
  };
  for (size_t k = 0; k < n; ++k) {
    if (G[k][k] == 0) {
      size_t j = k + 1;
      while (j < n && G[j][j] == 0) ++j;
      if (j < n) {
        std::swap(G[k], G[j]);
        for (auto& row : G) std::swap(row[k], row[j]);
      } else {
        j = k + 1;
        while (j < n && G[k][j] == 0) ++j;
        if (j == n) throw DomainError("diagonalize_symmetric: degenerate form");
        add_multiple(k, j, 1);
      }
    }
    for (size_t j = k + 1; j < n; ++j) {
      if (G[j][k] != 0) add_multiple(j, k, F.fneg(F.fdiv(G[j][k], G[k][k])));
    }
  }
  std::vector<uint32_t> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = G[i][i];
  return d;
}

namespace {

template <typename Functional>
GWForm transfer_by(const GWForm& form, const FieldPtr& F, const Poly& p, Functional f) {
  const Field& K = *form.field;
  if (p.degree() == 1) {
    require_same(K, *F);
    return form;
  }
  const int d = p.degree();
  const uint32_t s = residue_generator(K, *F, p);
  auto one_entry = [&](const Elem& a, std::vector<Elem>& out) {
    std::vector<std::vector<uint32_t>> G(d, std::vector<uint32_t>(d));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) G[i][j] = f(K.fmul(std::get<uint32_t>(a), K.fpow(s, i + j)));
    }
    for (uint32_t e : diagonalize_symmetric(*F, G)) out.push_back(e);
  };
  GWForm r = gw_zero(F);
  for (const auto& a : form.plus) one_entry(a, r.plus);
  for (const auto& a : form.minus) one_entry(a, r.minus);
  return r;
}

}  // namespace

GWForm scharlau_transfer(const GWForm& form, const FieldPtr& F, const Poly& p) {
  const Field& K = *form.field;
  const int d = p.degree();
  return transfer_by(form, F, p, [&](uint32_t x) { return K.coords(x)[d - 1]; });
}

GWForm trace_transfer(const GWForm& form, const FieldPtr& F, const Poly& p) {
  const Field& K = *form.field;
  const int d = p.degree();
  return transfer_by(form, F, p, [&](uint32_t x) {
    const uint32_t s = residue_generator(K, *F, p);
    uint32_t tr = 0;
    uint32_t y = x;
    for (int i = 0; i < d; ++i) {
      tr = F->fadd(tr, K.coords(y)[i]);
      y = K.fmul(y, s);
    }
    return tr;
  });
}

TwistedMW canonical_transfer(const TwistedMW& x, const FieldPtr& F, const Poly& p) {
  TwistedMW n = normalized(x);
  const FieldPtr& K = n.expr.field();
  uint32_t pp = 1;
  if (p.degree() > 1) pp = poly::eval_in(*K, poly::deriv(*F, p), residue_generator(*K, *F, p));
  MWExpr tau = geometric_transfer(mw_mul(angle(K, Elem{pp}), n.expr), F, p);
  return TwistedMW{tau, F->one(), n.line};
}

MWExpr reciprocity_defect(const MWExpr& x) {
  const Field& Ft = require_function_field(x);
  const FieldPtr& F = Ft.base();
  MWExpr out = residue(x, ValuationSpec::at_infinity());
  for (const auto& v : ramification_support(x)) {
    MWExpr r = residue(x, v);
    if (!r.is_zero()) out = mw_add(out, geometric_transfer(r, F, v.p));
  }
  return normal_form(out);
}

bool function_field_is_zero(const MWExpr& x) {
  const Field& Ft = require_function_field(x);
  for (const auto& v : ramification_support(x)) {
    MWExpr r = residue(x, v);
    if (!r.is_zero() && !mw_is_zero(r)) return false;
  }
  const uint32_t q = Ft.base()->size();
  uint32_t c = 0;
  while (c + 1 < q && !slot_unramified_at(x, c)) ++c;
  if (!slot_unramified_at(x, c)) c = 0;
  return mw_is_zero(specialize(x, c));
}

}  // namespace mwcalc
