#include "mwcalc/lines.hpp"

#include <algorithm>
#include <cctype>

namespace mwcalc {

int GradedLine::shift() const {
  int a = 0;
  for (const auto& x : word) a += x.grade;
  return a;
}

GradedLine tensor(const GradedLine& g, const GradedLine& h) {
  GradedLine r = g;
  r.word.insert(r.word.end(), h.word.begin(), h.word.end());
  return r;
}

GradedLine dual(const GradedLine& g) {
  GradedLine r;
  for (auto it = g.word.rbegin(); it != g.word.rend(); ++it) {
    Atom a = *it;
    if (!a.name.empty() && a.name.back() == '*') {
      a.name.pop_back();
    } else {
      a.name += '*';
    }
    a.grade = -a.grade;
    r.word.push_back(a);
  }
  return r;
}

int swap_sign(const GradedLine& g, const GradedLine& h) { return (g.shift() * h.shift()) % 2 == 0 ? 1 : -1; }

int dual_pairing_sign(const GradedLine& g) { return g.shift() % 2 == 0 ? 1 : -1; }

Atom place_atom(const std::string& place) {
  bool simple = std::all_of(place.begin(), place.end(), [](unsigned char c) { return std::isalnum(c); });
  return Atom{simple ? place + "*" : "(" + place + ")*", -1};
}

Atom infinity_atom() { return Atom{"inf*", -1}; }

Atom chart_atom(int d, bool at_infinity) {
  return Atom{"O(" + std::to_string(d) + ")" + (at_infinity ? "_inf" : ""), 0};
}

std::string word_str(const GradedLine& g) {
  std::string s;
  for (const auto& a : g.word) {
    if (!s.empty()) s += ' ';
    s += a.name;
  }
  return s;
}

TwistedMW twisted(const MWExpr& expr, GradedLine line) { return TwistedMW{expr, expr.field()->one(), std::move(line)}; }

TwistedMW rebase(const TwistedMW& x, const Elem& u) {
  const FieldPtr& F = x.expr.field();
  if (F->is_zero(u)) throw DomainError("rebase by zero");
  return TwistedMW{mw_mul(angle(F, u), x.expr), F->div(x.scale, u), x.line};
}

TwistedMW normalized(const TwistedMW& x) {
  const FieldPtr& F = x.expr.field();
  if (F->is_one(x.scale)) return x;
  return TwistedMW{mw_mul(angle(F, x.scale), x.expr), F->one(), x.line};
}

TwistedMW swap_atoms(const TwistedMW& x, size_t i) {
  if (i + 1 >= x.line.word.size()) throw DomainError("swap_atoms: index out of range");
  TwistedMW r = x;
  auto& w = r.line.word;
  if ((w[i].grade * w[i + 1].grade) % 2 != 0) r.scale = r.expr.field()->neg(r.scale);
  std::swap(w[i], w[i + 1]);
  return r;
}

TwistedMW reorder(const TwistedMW& x, const GradedLine& target) {
  if (x.line.word.size() != target.word.size()) throw DomainError("reorder: twist words differ");
  TwistedMW r = x;
  for (size_t j = 0; j < target.word.size(); ++j) {
    size_t k = j;
    while (k < r.line.word.size() && !(r.line.word[k] == target.word[j])) ++k;
    if (k == r.line.word.size()) throw DomainError("reorder: twist words differ");
    for (; k > j; --k) r = swap_atoms(r, k - 1);
  }
  return r;
}

TwistedMW twisted_add(const TwistedMW& x, const TwistedMW& y) {
  TwistedMW a = normalized(x);
  TwistedMW b = normalized(reorder(y, x.line));
  return TwistedMW{mw_add(a.expr, b.expr), a.scale, a.line};
}

TwistedMW twisted_mul(const TwistedMW& x, const TwistedMW& y) {
  const FieldPtr& F = x.expr.field();
  return TwistedMW{mw_mul(x.expr, y.expr), F->mul(x.scale, y.scale), tensor(x.line, y.line)};
}

Tri twisted_compare(const TwistedMW& x, const TwistedMW& y) {
  TwistedMW a = normalized(x);
  TwistedMW b = normalized(reorder(y, x.line));
  return mw_compare(a.expr, b.expr);
}

bool twisted_equal(const TwistedMW& x, const TwistedMW& y) {
  if (x.expr.field()->is_real()) return twisted_compare(x, y) == Tri::Yes;
  TwistedMW a = normalized(x);
  TwistedMW b = normalized(reorder(y, x.line));
  return mw_equal(a.expr, b.expr);
}

TwistedMW det_ses_compose(const TwistedMW& x, const Elem& pprime) {
  const auto& w = x.line.word;
  if (w.size() < 2 || w[0].grade != -1) throw DomainError("det_ses_compose expects a closed-point word");
  const FieldPtr& F = x.expr.field();
  TwistedMW r{x.expr, F->div(x.scale, pprime), GradedLine{{w.begin() + 2, w.end()}}};
  return r;
}

}  // namespace mwcalc
