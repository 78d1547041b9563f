#include "mwcalc/factor.hpp"

#include <algorithm>
#include <random>

#include "mwcalc/poly.hpp"

namespace mwcalc {

namespace {

// p-th root of a polynomial whose exponents are all multiples of p.
Poly pth_root(const Field& F, const Poly& f) {
  uint32_t p = F.characteristic();
  int64_t e = F.size() / p;  // a^(q/p) is the p-th root of a
  Poly r;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) r.c.push_back(F.fpow(f.c[i], e));
  poly::trim(r);
  return r;
}

void squarefree(const Field& F, const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.degree() < 1) return;
  Poly df = poly::deriv(F, f);
  if (df.is_zero()) {
    squarefree(F, pth_root(F, f), mult * static_cast<int>(F.characteristic()), out);
    return;
  }
  Poly c = poly::gcd(F, f, df);
  Poly w = poly::quot(F, f, c);
  int i = 1;
  while (w.degree() >= 1) {
    Poly y = poly::gcd(F, w, c);
    Poly fac = poly::quot(F, w, y);
    if (fac.degree() >= 1) out.emplace_back(fac, i * mult);
    w = y;
    c = poly::quot(F, c, y);
    ++i;
  }
  if (c.degree() >= 1) {
    squarefree(F, pth_root(F, c), mult * static_cast<int>(F.characteristic()), out);
  }
}

// Splits a squarefree monic f into products of irreducibles of equal degree.
std::vector<std::pair<Poly, int>> distinct_degree(const Field& F, Poly f) {
  std::vector<std::pair<Poly, int>> out;
  Poly h = poly::x();
  uint64_t q = F.size();
  int d = 0;
  while (f.degree() >= 2 * (d + 1)) {
    ++d;
    h = poly::powmod(F, h, q, f);
    Poly g = poly::gcd(F, poly::sub(F, h, poly::x()), f);
    if (g.degree() >= 1) {
      out.emplace_back(g, d);
      f = poly::quot(F, f, g);
      h = poly::mod(F, h, f);
    }
  }
  if (f.degree() >= 1) out.emplace_back(f, f.degree());
  return out;
}

Poly random_poly(const Field& F, int below_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint32_t> dist(0, F.size() - 1);
  Poly r;
  for (int i = 0; i < below_degree; ++i) r.c.push_back(dist(rng));
  poly::trim(r);
  return r;
}

void equal_degree(const Field& F, const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  uint64_t q = F.size();
  while (true) {
    Poly a = random_poly(F, f.degree(), rng);
    if (a.degree() < 1) continue;
    // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
    Poly norm = poly::constant(1);
    Poly frob = a;
    for (int i = 0; i < d; ++i) {
      norm = poly::mod(F, poly::mul(F, norm, frob), f);
      frob = poly::powmod(F, frob, q, f);
    }
    Poly b = poly::powmod(F, norm, (q - 1) / 2, f);
    b = poly::sub(F, b, poly::constant(1));
    Poly g = poly::gcd(F, b, f);
    if (g.degree() >= 1 && g.degree() < f.degree()) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, poly::quot(F, f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

bool poly_order(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.c < b.c;
}

Factorization factor(const Field& F, const Poly& f, uint64_t seed) {
  if (!F.is_finite()) throw DomainError("factor: coefficient field must be finite");
  if (f.is_zero()) throw DomainError("factor: zero polynomial");
  Factorization res;
  res.unit = f.lead();
  Poly m = poly::monic(F, f);
  std::vector<std::pair<Poly, int>> sqf;
  squarefree(F, m, 1, sqf);
  std::mt19937_64 rng(seed);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(F, part)) {
      std::vector<Poly> irr;
      equal_degree(F, block, d, rng, irr);
      for (auto& g : irr) res.factors.emplace_back(poly::monic(F, g), mult);
    }
  }
  std::sort(res.factors.begin(), res.factors.end(),
            [](const auto& a, const auto& b) { return poly_order(a.first, b.first); });
  // Merge repeated irreducibles (possible when p-th roots were taken).
  std::vector<std::pair<Poly, int>> merged;
  for (auto& fm : res.factors) {
    if (!merged.empty() && merged.back().first == fm.first) {
      merged.back().second += fm.second;
    } else {
      merged.push_back(fm);
    }
  }
  res.factors = std::move(merged);
  return res;
}

bool is_irreducible(const Field& F, const Poly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor(F, f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<Poly> monic_irreducibles(const Field& F, int degree) {
  std::vector<Poly> out;
  uint64_t q = F.size();
  uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= q;
  for (uint64_t idx = 0; idx < count; ++idx) {
    Poly f;
    uint64_t v = idx;
    for (int i = 0; i < degree; ++i) {
      f.c.push_back(static_cast<uint32_t>(v % q));
      v /= q;
    }
    f.c.push_back(1);
    if (is_irreducible(F, f)) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), poly_order);
  return out;
}

}  // namespace mwcalc
