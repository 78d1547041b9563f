#include "mwcalc/rost_schmid.hpp"

#include <algorithm>

#include "mwcalc/factor.hpp"
#include "mwcalc/poly.hpp"

namespace mwcalc {

namespace {

void require_curve(const Scheme& X, const char* what) {
  if (X.kind == SchemeKind::Point) throw DomainError(std::string(what) + " needs A^1 or P^1");
}

bool is_chart_atom(const Atom& a) { return a.name.rfind("O(", 0) == 0; }

size_t chart_position(const GradedLine& g) {
  for (size_t i = 0; i < g.word.size(); ++i) {
    if (is_chart_atom(g.word[i])) return i;
  }
  throw DomainError("P^1 cochain value without a chart atom");
}

Point point_of(const ValuationSpec& v) { return v.infinity ? Point::infinity() : Point::closed(v.p); }

bool class_vanishes(const TwistedMW& v) { return v.expr.is_zero() || mw_is_zero(normalized(v).expr); }

Elem embed(const Elem& a, const Field& from, const Field& to) {
  if (same_field(from, to)) return a;
  if (to.is_function_field() && same_field(*to.base(), from)) return to.constant(std::get<uint32_t>(a));
  if (to.kind() == FieldKind::Ext && same_field(*to.base(), from)) return to.embed(std::get<uint32_t>(a));
  throw DomainError("exterior product: unsupported composite of " + from.key() + " and " + to.key());
}

bool embeds(const Field& from, const Field& to) {
  if (same_field(from, to)) return true;
  if (!to.base()) return false;
  return (to.is_function_field() || to.kind() == FieldKind::Ext) && same_field(*to.base(), from);
}

TwistedMW embed_value(const TwistedMW& x, const FieldPtr& to) {
  const Field& from = *x.expr.field();
  MWExpr e = map_slots(x.expr, to, [&](const Elem& a) { return embed(a, from, *to); });
  return TwistedMW{e, embed(x.scale, from, *to), x.line};
}

}  // namespace

FieldPtr Scheme::function_field() const {
  if (kind == SchemeKind::Point) return base;
  return rational_function_field(base);
}

std::string Scheme::name() const {
  switch (kind) {
    case SchemeKind::Point: return "Spec";
    case SchemeKind::AffineLine: return "A1";
    case SchemeKind::ProjLine: return "P1";
  }
  return "?";
}

bool point_order(const Point& a, const Point& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind != Point::Closed) return false;
  return poly_order(a.p, b.p);
}

std::string point_str(const Scheme& X, const Point& x) {
  switch (x.kind) {
    case Point::Generic: return "generic";
    case Point::Infinity: return "inf";
    case Point::Closed: return X.base->poly_str(x.p, X.function_field()->var());
  }
  return "?";
}

FieldPtr point_field(const Scheme& X, const Point& x) {
  switch (x.kind) {
    case Point::Generic: return X.function_field();
    case Point::Infinity: return X.base;
    case Point::Closed: return residue_field(X.base, x.p);
  }
  return X.base;
}

int point_degree(const Point& x) { return x.kind == Point::Closed ? x.p.degree() : 1; }

const TwistedMW* RSCochain::at(const Point& x) const {
  for (const auto& [p, v] : values) {
    if (p == x) return &v;
  }
  return nullptr;
}

void RSCochain::set(const Point& x, TwistedMW v) {
  for (auto& [p, old] : values) {
    if (p == x) {
      old = std::move(v);
      return;
    }
  }
  auto it = std::lower_bound(values.begin(), values.end(), x,
                             [](const auto& e, const Point& y) { return point_order(e.first, y); });
  values.emplace(it, x, std::move(v));
}

RSCochain generic_cochain(const Scheme& X, const MWExpr& alpha, int twist, std::vector<Atom> extra) {
  FieldPtr K = X.function_field();
  MWExpr a = alpha;
  if (X.kind != SchemeKind::Point && same_field(*alpha.field(), *X.base)) a = pullback(alpha, K);
  require_same(*a.field(), *K);
  if (X.kind != SchemeKind::ProjLine && twist != 0) throw DomainError("O(d) twists are only supported on P^1");
  GradedLine line;
  if (X.kind == SchemeKind::ProjLine) line.word.push_back(chart_atom(twist, false));
  line.word.insert(line.word.end(), extra.begin(), extra.end());
  RSCochain c{X, 0, a.degree(), twist, {}};
  c.set(Point::generic(), twisted(a, line));
  return c;
}

RSCochain point_cochain(const Scheme& X, const Point& x, const MWExpr& value, int twist) {
  require_curve(X, "point_cochain");
  if (x.kind == Point::Generic) throw DomainError("point_cochain expects a closed point");
  if (x.kind == Point::Infinity && X.kind != SchemeKind::ProjLine) throw DomainError("A^1 has no point at infinity");
  require_same(*value.field(), *point_field(X, x));
  GradedLine line;
  if (x.kind == Point::Infinity) {
    line.word = {infinity_atom(), chart_atom(twist, true)};
  } else {
    line.word.push_back(place_atom(point_str(X, x)));
    if (X.kind == SchemeKind::ProjLine) line.word.push_back(chart_atom(twist, false));
  }
  RSCochain c{X, 1, value.degree() + 1, twist, {}};
  c.set(x, twisted(value, line));
  return c;
}

RSCochain differential(const RSCochain& x) {
  RSCochain out{x.scheme, x.codim + 1, x.weight, x.twist, {}};
  if (x.codim != 0 || x.scheme.kind == SchemeKind::Point) return out;
  const TwistedMW* g0 = x.at(Point::generic());
  if (!g0) return out;
  TwistedMW g = normalized(*g0);
  for (const auto& v : ramification_support(g.expr)) {
    TwistedMW r = residue_twisted(g, v);
    if (!class_vanishes(r)) out.set(point_of(v), r);
  }
  if (x.scheme.kind == SchemeKind::ProjLine) {
    const Field& Ft = *g.expr.field();
    TwistedMW ginf = g;
    // alpha (x) e0 = <t^-d> alpha (x) e_inf; t^-d is t^-1 up to squares for odd d.
    if (x.twist % 2 != 0) ginf.expr = mw_mul(angle(g.expr.field(), Ft.inv(Ft.variable(Ft.var()))), g.expr);
    ginf.line.word[chart_position(ginf.line)] = chart_atom(x.twist, true);
    TwistedMW r = residue_twisted(ginf, ValuationSpec::at_infinity());
    if (!class_vanishes(r)) out.set(Point::infinity(), r);
  }
  return out;
}

TwistedMW pushforward_point(const RSCochain& x) {
  const FieldPtr& F = x.scheme.base;
  if (x.scheme.kind == SchemeKind::Point) {
    const TwistedMW* g = x.at(Point::generic());
    return g ? *g : twisted(MWExpr(F, x.weight));
  }
  if (x.scheme.kind != SchemeKind::ProjLine) throw DomainError("push-forward needs a proper scheme (P^1)");
  if (x.codim != 1) throw DomainError("push-forward to the base is defined on codim-1 cochains");
  if (x.twist % 2 != 0) throw DomainError("the Milnor-Witt degree needs an even twist; use the classical degree");
  MWExpr acc(F, x.weight - 1);
  std::optional<GradedLine> line;
  for (const auto& [pt, v] : x.values) {
    auto transferred = [&, &pt = pt, &v = v]() {
      if (pt.kind == Point::Infinity) return normalized(det_ses_compose(v, F->one()));
      const FieldPtr& K = v.expr.field();
      uint32_t pp = 1;
      if (pt.p.degree() > 1) pp = poly::eval_in(*K, poly::deriv(*F, pt.p), residue_generator(*K, *F, pt.p));
      return canonical_transfer(det_ses_compose(v, Elem{pp}), F, pt.p);
    };
    TwistedMW t = transferred();
    if (!line) line = t.line;
    t = normalized(reorder(t, *line));
    acc = mw_add(acc, t.expr);
  }
  return TwistedMW{normal_form(acc), F->one(), line.value_or(GradedLine{})};
}

MilnorValue classical_degree(const RSCochain& x) {
  const FieldPtr& F = x.scheme.base;
  MWExpr acc(F, x.weight - x.codim);
  for (const auto& [pt, v] : x.values) {
    MWExpr m = to_milnor(v.expr);
    if (pt.kind == Point::Closed) m = geometric_transfer(m, F, pt.p);
    if (pt.kind == Point::Generic && x.scheme.kind != SchemeKind::Point) {
      throw DomainError("classical degree is defined on codim-1 cochains");
    }
    acc = mw_add(acc, m);
  }
  return milnor_invariant(acc);
}

int64_t chow_degree(const RSCochain& x) {
  int64_t total = 0;
  for (const auto& [pt, v] : x.values) {
    if (v.expr.degree() != 0 && !v.expr.is_zero()) throw DomainError("Chow degree needs degree-0 values");
    int64_t rank = 0;
    for (const auto& [k, c] : v.expr.terms()) {
      if (k.eta == 0) rank += c;
    }
    total += point_degree(pt) * rank;
  }
  return total;
}

RSCochain pullback_flat(const MWExpr& alpha, const Scheme& X, int twist) {
  if (X.kind == SchemeKind::Point) return generic_cochain(X, alpha);
  return generic_cochain(X, pullback(alpha, X.function_field()), twist);
}

std::optional<MWExpr> h0_membership(const RSCochain& x) {
  if (x.scheme.kind != SchemeKind::AffineLine || x.codim != 0) throw DomainError("h0_membership expects a codim-0 cochain on A^1");
  if (!differential(x).empty()) return std::nullopt;
  const TwistedMW* g = x.at(Point::generic());
  if (!g) return MWExpr(x.scheme.base, x.weight);
  return constant_part(normalized(*g).expr);
}

Atom function_atom(const Field& Ft, const Elem& f) { return Atom{Ft.str(f), -1}; }

RSCochain mu_f(const RSCochain& x, const Elem& f) {
  require_curve(x.scheme, "mu_f");
  if (x.codim != 0) throw DomainError("mu_f expects a codim-0 cochain");
  FieldPtr Ft = x.scheme.function_field();
  if (Ft->is_zero(f)) throw DomainError("mu_f: f must be nonzero");
  RSCochain out{x.scheme, 1, x.weight + 1, x.twist, {}};
  const TwistedMW* g0 = x.at(Point::generic());
  if (!g0) return out;
  TwistedMW g = normalized(*g0);
  // codim i = 0, so <(-1)^i> = 1
  TwistedMW lifted{mw_mul(bracket(Ft, f), g.expr), Ft->one(), g.line};
  size_t pos = x.scheme.kind == SchemeKind::ProjLine ? chart_position(g.line) + 1 : 0;
  lifted.line.word.insert(lifted.line.word.begin() + pos, function_atom(*Ft, f));
  RSCochain y{x.scheme, 0, lifted.expr.degree(), x.twist, {}};
  y.set(Point::generic(), lifted);
  RSCochain dy = differential(y);
  for (const auto& [pt, v] : dy.values) {
    ValuationSpec spec = pt.kind == Point::Infinity ? ValuationSpec::at_infinity() : ValuationSpec::padic(pt.p);
    if (valuation(*Ft, f, spec) > 0) out.set(pt, v);
  }
  return out;
}

RSCochain ord_tilde(const Elem& f, const Scheme& X) {
  require_curve(X, "ord_tilde");
  FieldPtr Ft = X.function_field();
  return differential(generic_cochain(X, bracket(Ft, f), 0, {function_atom(*Ft, f)}));
}

std::optional<TwistedMW> localization_boundary(const RSCochain& x) {
  if (x.scheme.kind != SchemeKind::AffineLine) throw DomainError("localization_boundary works on G_m inside A^1");
  RSCochain dx = differential(x);
  const TwistedMW* v = dx.at(Point::closed(poly::x()));
  if (!v) return std::nullopt;
  return *v;
}

ChowWittClass euler_class_line(int d, const FieldPtr& F, const Poly& section) {
  if (section.is_zero()) throw DomainError("euler_class_line: zero section");
  if (section.degree() > d) throw DomainError("euler_class_line: section degree exceeds d");
  Scheme X = Scheme::proj_line(F);
  FieldPtr Ft = X.function_field();
  RSCochain cycle{X, 1, 1, -d, {}};
  TwistedMW g = twisted(bracket(Ft, Ft->from_poly(section)), GradedLine{{chart_atom(-d, false)}});
  for (const auto& v : ramification_support(g.expr)) cycle.set(Point::closed(v.p), residue_twisted(g, v));
  if (section.degree() < d) {
    // Local equation in the chart at infinity: s(t) / t^d.
    Elem s_inf = Ft->div(Ft->from_poly(section), Ft->pow(Ft->variable(Ft->var()), d));
    TwistedMW h = twisted(bracket(Ft, s_inf), GradedLine{{chart_atom(-d, true)}});
    cycle.set(Point::infinity(), residue_twisted(h, ValuationSpec::at_infinity()));
  }
  ChowWittClass c{cycle, chow_degree(cycle), std::nullopt};
  if (d % 2 == 0) c.mw_degree = pushforward_point(cycle).expr;
  return c;
}

std::vector<std::pair<Point, MWExpr>> chow_comparison(const RSCochain& x) {
  std::vector<std::pair<Point, MWExpr>> out;
  for (const auto& [pt, v] : x.values) {
    MWExpr m = simplify(to_milnor(v.expr));
    if (!m.is_zero()) out.emplace_back(pt, m);
  }
  return out;
}

TwistedMW exterior_value(const TwistedMW& a, const TwistedMW& b) {
  const FieldPtr& fa = a.expr.field();
  const FieldPtr& fb = b.expr.field();
  if (same_field(*fa, *fb)) return twisted_mul(a, b);
  if (embeds(*fa, *fb)) return twisted_mul(embed_value(a, fb), b);
  if (embeds(*fb, *fa)) return twisted_mul(a, embed_value(b, fa));
  throw DomainError("exterior product: unsupported composite of " + fa->key() + " and " + fb->key());
}

RSCochain exterior_product(const RSCochain& x, const RSCochain& y) {
  const bool x_point = x.scheme.kind == SchemeKind::Point;
  const bool y_point = y.scheme.kind == SchemeKind::Point;
  if (!x_point && !y_point) throw DomainError("exterior product of two curves is out of scope");
  require_same(*x.scheme.base, *y.scheme.base);
  const RSCochain& curve = x_point ? y : x;
  const RSCochain& pt = x_point ? x : y;
  RSCochain out{curve.scheme, x.codim + y.codim, x.weight + y.weight, curve.twist, {}};
  const TwistedMW* beta = pt.at(Point::generic());
  if (!beta) return out;
  for (const auto& [p, v] : curve.values) {
    out.set(p, x_point ? exterior_value(*beta, v) : exterior_value(v, *beta));
  }
  return out;
}

}  // namespace mwcalc
