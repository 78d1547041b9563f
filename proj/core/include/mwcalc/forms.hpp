#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwcalc/field.hpp"

namespace mwcalc {

// Virtual diagonal form <plus...> - <minus...>.
struct GWForm {
  FieldPtr field;
  std::vector<Elem> plus;
  std::vector<Elem> minus;

  int64_t rank() const { return static_cast<int64_t>(plus.size()) - static_cast<int64_t>(minus.size()); }
};

struct GWInvariants {
  int64_t rank = 0;
  // +1 when the discriminant is a square (finite) or positive (real model), else -1.
  int disc = 1;
  bool has_signature = false;
  int64_t signature = 0;
};

// Complete invariant of a GW class. Over F_q: aux is the discriminant bit
// (0 for a square); over the real model: aux is the signature.
struct GWClass {
  int64_t rank = 0;
  int64_t aux = 0;
  auto operator<=>(const GWClass&) const = default;
};

// Complete invariant of a Witt class. Over F_q: (rank mod 2, discriminant bit
// after removing hyperbolic planes); over the real model: (signature, 0).
struct WittClass {
  int64_t a = 0;
  int64_t b = 0;
  auto operator<=>(const WittClass&) const = default;
  bool is_zero() const { return a == 0 && b == 0; }
};

GWForm diag(const FieldPtr& F, std::vector<Elem> entries);
GWForm gw_zero(const FieldPtr& F);
GWForm gw_add(const GWForm& x, const GWForm& y);
GWForm gw_neg(const GWForm& x);
GWForm gw_sub(const GWForm& x, const GWForm& y);
GWForm gw_mul(const GWForm& x, const GWForm& y);
GWForm gw_scale(const GWForm& x, int64_t n);

GWInvariants invariants(const GWForm& x);
bool gw_equal(const GWForm& x, const GWForm& y);
bool witt_equal(const GWForm& x, const GWForm& y);

// <<a1,...,an>> = <-1,a1> ... <-1,an>; n = 0 gives <1>.
GWForm pfister(const FieldPtr& F, const std::vector<Elem>& a);
// Membership of the Witt class of x in I^n (I^n = W for n <= 0).
bool in_I_power(const GWForm& x, int n);
// Class of x in I^n / I^(n+1), encoded as 0 or 1 (that quotient is Z/2 or 0
// for the supported fields). Requires in_I_power(x, n).
int sbar_n(const GWForm& x, int n);

GWForm hyperbolic(const FieldPtr& F);
// eps = -<-1>
GWForm epsilon_form(const FieldPtr& F);
GWForm n_epsilon(const FieldPtr& F, int64_t n);

// Compact invariant arithmetic (finite fields and the real model).
void require_classifiable(const Field& F);
GWClass unit_class(const Field& F, const Elem& u);
GWClass class_of(const GWForm& x);
GWClass class_add(const GWClass& x, const GWClass& y);
GWClass class_neg(const GWClass& x);
GWClass class_mul(const Field& F, const GWClass& x, const GWClass& y);
GWClass class_scale(const GWClass& x, int64_t n);
GWClass pfister_class(const Field& F, const std::vector<Elem>& a);
WittClass witt_of(const Field& F, const GWClass& x);
GWClass class_from(const Field& F, int64_t rank, const WittClass& w);

// Canonical anisotropic representative: over F_q one of 0, <1>, <u0> and
// <1,u0> (q = 1 mod 4) or <1,1> (q = 3 mod 4); over the real model
// s copies of <1> or <-1>.
GWForm witt_representative(const FieldPtr& F, const WittClass& w);

std::string form_str(const GWForm& x);

}  // namespace mwcalc
