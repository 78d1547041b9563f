#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mwcalc/field.hpp"
#include "mwcalc/forms.hpp"
#include "mwcalc/lines.hpp"
#include "mwcalc/mw.hpp"

namespace mwcalc {

// A place of F_q(t): the p-adic valuation for a monic irreducible p, or the
// place at infinity with the fixed uniformizer -1/t.
struct ValuationSpec {
  bool infinity = false;
  Poly p;

  static ValuationSpec padic(Poly p) { return ValuationSpec{false, std::move(p)}; }
  static ValuationSpec at_infinity() { return ValuationSpec{true, {}}; }
  bool operator==(const ValuationSpec&) const = default;
};

// Canonical point order: finite places by (degree, coefficients), infinity last.
bool place_order(const ValuationSpec& a, const ValuationSpec& b);
std::string place_str(const Field& Ft, const ValuationSpec& v);

struct ValuationUnit {
  int64_t n = 0;
  Elem u;
};

// f = u * pi_v^n with pi_v = p or -1/t.
ValuationUnit valuation_and_unit(const Field& Ft, const Elem& f, const ValuationSpec& v);
int64_t valuation(const Field& Ft, const Elem& f, const ValuationSpec& v);
Elem uniformizer(const Field& Ft, const ValuationSpec& v);

// F[s]/(p) for monic irreducible p; F itself when deg p = 1.
FieldPtr residue_field(const FieldPtr& F, const Poly& p);
FieldPtr residue_field_at(const FieldPtr& Ft, const ValuationSpec& v);
// F(t) with a variable name that does not clash with F.
FieldPtr rational_function_field(const FieldPtr& F);
// Reduction of an element with v(f) >= 0 into the residue field K.
Elem reduce(const Field& Ft, const Elem& f, const ValuationSpec& v, const Field& K);
// Representative of degree < deg p of an element of K = F[s]/(p).
Poly lift(const Field& K, const Field& F, uint32_t a);
// Class of s in K = F[s]/(p) (the root c when deg p = 1).
uint32_t residue_generator(const Field& K, const Field& F, const Poly& p);

// Residue with the canonical uniformizer (p, or -1/t at infinity).
MWExpr residue(const MWExpr& x, const ValuationSpec& v);
// Residue with respect to an explicit uniformizer pi, v(pi) = 1.
MWExpr residue(const MWExpr& x, const ValuationSpec& v, const Elem& pi);
// Twisted residue: the value is d^pi(alpha) (x) pibar^* (x) l, stored against
// the canonical place atom (so pibar^* = ubar^-1 pbar^* shows up in the scale).
TwistedMW residue_twisted(const TwistedMW& x, const ValuationSpec& v);
TwistedMW residue_twisted(const TwistedMW& x, const ValuationSpec& v, const Elem& pi);

// Finite places where some slot has a zero or a pole, in canonical order.
std::vector<ValuationSpec> ramification_support(const MWExpr& x);

struct ResidueData {
  std::vector<std::pair<Poly, MWExpr>> finite;
  std::optional<MWExpr> infinity;
};
// Nonzero residues at finite places (and at infinity when requested).
ResidueData total_residue(const MWExpr& x, bool with_infinity = false);

// d_{t-c}^{t-c}([t-c] x) at the least rational c where x is unramified.
MWExpr constant_part(const MWExpr& x);

struct Reconstruction {
  MWExpr constant;
  MWExpr lift;
};
// x = pullback(constant) + lift, with lift built from the residues of x.
Reconstruction reconstruct(const MWExpr& x);

// sum eta^m [p, lift(b1), ..., lift(br)] for beta = sum eta^m [b1, ..., br].
MWExpr section_lift(const MWExpr& beta, const FieldPtr& Ft, const Poly& p);

// tau_p: K^MW(F(p)) -> K^MW(F) by lift-and-correct with degree descent.
// The result is in normal form.
MWExpr geometric_transfer(const MWExpr& beta, const FieldPtr& F, const Poly& p);
// Transfer along the form f_p(s^i) = [i = d-1].
GWForm scharlau_transfer(const GWForm& form, const FieldPtr& F, const Poly& p);
GWForm trace_transfer(const GWForm& form, const FieldPtr& F, const Poly& p);
// Tr(alpha (x) l) = tau_p(<p'(s)> alpha) (x) l.
TwistedMW canonical_transfer(const TwistedMW& x, const FieldPtr& F, const Poly& p);

// sum_p tau_p(d_p^p x) + d_inf^{-1/t} x, in normal form.
MWExpr reciprocity_defect(const MWExpr& x);

// Decides x = 0 over F_q(t): all residues vanish and the constant part is 0.
bool function_field_is_zero(const MWExpr& x);

// Congruence diagonalization of a nondegenerate symmetric matrix over F.
std::vector<uint32_t> diagonalize_symmetric(const Field& F, std::vector<std::vector<uint32_t>> G);

}  // namespace mwcalc
