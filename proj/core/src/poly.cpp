#include "mwcalc/poly.hpp"

namespace mwcalc::poly {

void trim(Poly& f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

Poly constant(uint32_t c) {
  Poly f;
  if (c != 0) f.c.push_back(c);
  return f;
}

Poly monomial(uint32_t c, int deg) {
  Poly f;
  if (c == 0) return f;
  f.c.assign(deg + 1, 0);
  f.c[deg] = c;
  return f;
}

Poly x() { return monomial(1, 1); }

Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.fadd(a.coeff(i), b.coeff(i));
  trim(r);
  return r;
}

Poly neg(const Field& F, const Poly& a) {
  Poly r = a;
  for (auto& v : r.c) v = F.fneg(v);
  return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.fsub(a.coeff(i), b.coeff(i));
  trim(r);
  return r;
}

Poly scale(const Field& F, const Poly& a, uint32_t c) {
  if (c == 0) return {};
  Poly r = a;
  for (auto& v : r.c) v = F.fmul(v, c);
  return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      r.c[i + j] = F.fadd(r.c[i + j], F.fmul(a.c[i], b.c[j]));
    }
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  Poly r = a;
  Poly q;
  int db = b.degree();
  if (r.degree() < db) return {q, r};
  q.c.assign(r.degree() - db + 1, 0);
  uint32_t inv_lead = F.finv(b.lead());
  while (r.degree() >= db) {
    int shift = r.degree() - db;
    uint32_t factor = F.fmul(r.lead(), inv_lead);
    q.c[shift] = factor;
    for (int i = 0; i <= db; ++i) {
      r.c[i + shift] = F.fsub(r.c[i + shift], F.fmul(factor, b.c[i]));
    }
    trim(r);
  }
  trim(q);
  return {q, r};
}

Poly mod(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }
Poly quot(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).first; }

Poly monic(const Field& F, const Poly& a) {
  if (a.is_zero()) return a;
  return scale(F, a, F.finv(a.lead()));
}

Poly gcd(const Field& F, const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = mod(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(F, x);
}

Poly powmod(const Field& F, const Poly& a, uint64_t e, const Poly& m) {
  Poly result = mod(F, constant(1), m);
  Poly base = mod(F, a, m);
  while (e > 0) {
    if (e & 1) result = mod(F, mul(F, result, base), m);
    e >>= 1;
    if (e) base = mod(F, mul(F, base, base), m);
  }
  return result;
}

Poly pow(const Field& F, const Poly& a, unsigned e) {
  Poly result = constant(1);
  for (unsigned i = 0; i < e; ++i) result = mul(F, result, a);
  return result;
}

Poly deriv(const Field& F, const Poly& a) {
  Poly r;
  if (a.degree() < 1) return r;
  r.c.assign(a.c.size() - 1, 0);
  for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = F.fmul(F.fint(static_cast<int64_t>(i)), a.c[i]);
  trim(r);
  return r;
}

uint32_t eval(const Field& F, const Poly& a, uint32_t x) {
  uint32_t r = 0;
  for (int i = a.degree(); i >= 0; --i) r = F.fadd(F.fmul(r, x), a.c[i]);
  return r;
}

uint32_t eval_in(const Field& K, const Poly& a, uint32_t x) {
  uint32_t r = 0;
  for (int i = a.degree(); i >= 0; --i) r = K.fadd(K.fmul(r, x), K.embed(a.c[i]));
  return r;
}

bool is_one(const Poly& a) { return a.c.size() == 1 && a.c[0] == 1; }

bool divides(const Field& F, const Poly& d, const Poly& a) { return mod(F, a, d).is_zero(); }

}  // namespace mwcalc::poly
