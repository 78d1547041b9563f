#pragma once

#include <string>
#include <vector>

#include "mwcalc/mw.hpp"

namespace mwcalc {

// Basis symbol of a graded line, e.g. "t*" for the dual of the class of t in
// m/m^2 (grade -1) or "O(2)" for the chart-0 generator of O(2) (grade 0).
struct Atom {
  std::string name;
  int grade = 0;
  bool operator==(const Atom&) const = default;
};

struct GradedLine {
  std::vector<Atom> word;

  int shift() const;
  bool operator==(const GradedLine&) const = default;
};

GradedLine tensor(const GradedLine& g, const GradedLine& h);
GradedLine dual(const GradedLine& g);
// Sign of the symmetry (L,a)(x)(L',a') -> (L',a')(x)(L,a): (-1)^(aa').
int swap_sign(const GradedLine& g, const GradedLine& h);
// Sign of the left pairing (L^v,-a)(x)(L,a) -> 1: (-1)^a.
int dual_pairing_sign(const GradedLine& g);

Atom place_atom(const std::string& place);
Atom infinity_atom();
Atom chart_atom(int d, bool at_infinity);
std::string word_str(const GradedLine& g);

// alpha (x) scale * word; the scale is a unit of the owner field.
struct TwistedMW {
  MWExpr expr;
  Elem scale;
  GradedLine line;
};

TwistedMW twisted(const MWExpr& expr, GradedLine line = {});
// expr -> <u> expr, scale -> scale / u; the class is unchanged.
TwistedMW rebase(const TwistedMW& x, const Elem& u);
// Folds the scale into the expression (scale becomes 1).
TwistedMW normalized(const TwistedMW& x);
// Swaps atoms i and i+1 of the word, recording the Koszul sign in the scale.
TwistedMW swap_atoms(const TwistedMW& x, size_t i);
// Moves the word into the given order (a permutation of the current word).
TwistedMW reorder(const TwistedMW& x, const GradedLine& target);
TwistedMW twisted_add(const TwistedMW& x, const TwistedMW& y);
TwistedMW twisted_mul(const TwistedMW& x, const TwistedMW& y);
Tri twisted_compare(const TwistedMW& x, const TwistedMW& y);
bool twisted_equal(const TwistedMW& x, const TwistedMW& y);

// Curve bookkeeping at a closed point with residue field k(x): the leading
// pair (m_x/m_x^2)^* (x) dt is identified with D(Omega_{k(x)/k}), which is
// canonically trivial for separable k(x). Since dp = p'(x) dt this rescales
// by 1/p'(x). The first two atoms of the word are consumed.
TwistedMW det_ses_compose(const TwistedMW& x, const Elem& pprime);

}  // namespace mwcalc
