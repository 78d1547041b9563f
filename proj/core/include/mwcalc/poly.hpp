#pragma once

#include <utility>

#include "mwcalc/field.hpp"

namespace mwcalc {

// Polynomial arithmetic over a finite field F.
namespace poly {

void trim(Poly& f);
Poly constant(uint32_t c);
Poly monomial(uint32_t c, int deg);
Poly x();
Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly neg(const Field& F, const Poly& a);
Poly scale(const Field& F, const Poly& a, uint32_t c);
Poly mul(const Field& F, const Poly& a, const Poly& b);
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly mod(const Field& F, const Poly& a, const Poly& b);
Poly quot(const Field& F, const Poly& a, const Poly& b);
Poly gcd(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);
Poly powmod(const Field& F, const Poly& a, uint64_t e, const Poly& m);
Poly pow(const Field& F, const Poly& a, unsigned e);
Poly deriv(const Field& F, const Poly& a);
uint32_t eval(const Field& F, const Poly& a, uint32_t x);
// Evaluate a polynomial over F at an element of an extension K of F.
uint32_t eval_in(const Field& K, const Poly& a, uint32_t x);
bool is_one(const Poly& a);
bool divides(const Field& F, const Poly& d, const Poly& a);

}  // namespace poly
}  // namespace mwcalc
