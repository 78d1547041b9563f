#pragma once

#include <optional>
#include <string>

#include "mwcalc/field.hpp"
#include "mwcalc/forms.hpp"
#include "mwcalc/lines.hpp"
#include "mwcalc/mw.hpp"
#include "mwcalc/residue.hpp"
#include "mwcalc/rost_schmid.hpp"

namespace mwcalc {

// Syntax error carrying the byte offset into the input.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, size_t pos)
      : DomainError(what + " at position " + std::to_string(pos)), pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

// F5, F9 (least irreducible modulus in x), F9=F3[x]/(x^2+1),
// F3[x]/(x^2+1)[y]/(y^2-x-1), any of these followed by (t), and R.
FieldPtr parse_field(const std::string& text);
Elem parse_elem(const FieldPtr& F, const std::string& text);
// Polynomial in var with coefficients in the finite field F.
Poly parse_poly(const FieldPtr& F, const std::string& text, const std::string& var = "t");
// "inf" or a monic irreducible polynomial in the variable of Ft.
ValuationSpec parse_place(const FieldPtr& Ft, const std::string& text);

struct ParsedExpr {
  MWExpr expr;
  // Set by an "@O(d)", "@omega" or "@triv" suffix.
  std::optional<int> twist;
};
// integers, eta, eta^n, [a1,...], <u1,...>, h, eps, neps(n), pf(a,...),
// + - * and parentheses, optionally followed by a twist.
ParsedExpr parse_expr(const FieldPtr& F, const std::string& text);
MWExpr parse_mw(const FieldPtr& F, const std::string& text);
int parse_twist(const std::string& text);

// Plain expression (generic point) or {p: e; q: e; inf: e} (codim 1).
RSCochain parse_cochain(const Scheme& X, int twist, const std::string& text);

std::string to_string(const MWExpr& x);
std::string to_string(const TwistedMW& x);
std::string to_string(const RSCochain& x);
std::string tri_str(Tri t);

}  // namespace mwcalc
