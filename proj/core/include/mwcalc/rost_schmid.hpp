#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mwcalc/lines.hpp"
#include "mwcalc/mw.hpp"
#include "mwcalc/residue.hpp"

namespace mwcalc {

enum class SchemeKind { Point, AffineLine, ProjLine };

struct Scheme {
  SchemeKind kind = SchemeKind::Point;
  FieldPtr base;

  static Scheme point(const FieldPtr& F) { return Scheme{SchemeKind::Point, F}; }
  static Scheme affine_line(const FieldPtr& F) { return Scheme{SchemeKind::AffineLine, F}; }
  static Scheme proj_line(const FieldPtr& F) { return Scheme{SchemeKind::ProjLine, F}; }

  int dimension() const { return kind == SchemeKind::Point ? 0 : 1; }
  // Residue field of the generic point.
  FieldPtr function_field() const;
  std::string name() const;
};

struct Point {
  enum Kind { Generic, Closed, Infinity };
  Kind kind = Generic;
  Poly p;

  static Point generic() { return Point{Generic, {}}; }
  static Point closed(Poly p) { return Point{Closed, std::move(p)}; }
  static Point infinity() { return Point{Infinity, {}}; }
  bool operator==(const Point&) const = default;
};

// Generic first, then closed points by (degree, coefficients), infinity last.
bool point_order(const Point& a, const Point& b);
std::string point_str(const Scheme& X, const Point& x);
FieldPtr point_field(const Scheme& X, const Point& x);
int point_degree(const Point& x);

// Values are stored in the chart-0 trivialization. On P^1 every word starts
// with the chart atom O(d) (preceded by the place atom at closed points).
struct RSCochain {
  Scheme scheme;
  int codim = 0;
  int weight = 0;
  int twist = 0;
  std::vector<std::pair<Point, TwistedMW>> values;

  const TwistedMW* at(const Point& x) const;
  void set(const Point& x, TwistedMW v);
  bool empty() const { return values.empty(); }
};

// alpha (x) [O(d)] (x) extra at the generic point (the chart atom only on P^1).
RSCochain generic_cochain(const Scheme& X, const MWExpr& alpha, int twist = 0, std::vector<Atom> extra = {});
// A codim-1 cochain with a single value at a closed point (or infinity).
RSCochain point_cochain(const Scheme& X, const Point& x, const MWExpr& value, int twist = 0);

// Total twisted residue; at infinity of P^1 the value is moved to the chart at
// infinity with the transition unit t^-d. Codim-1 input maps to zero.
// Values whose class vanishes are dropped.
RSCochain differential(const RSCochain& x);

// Milnor-Witt degree of a codim-1 cochain on P^1 with even twist (or on a point).
TwistedMW pushforward_point(const RSCochain& x);
// K^M-level degree: sum of norms of the pointwise Milnor parts. For
// degree-0 values this is the classical Chow degree.
MilnorValue classical_degree(const RSCochain& x);
int64_t chow_degree(const RSCochain& x);

RSCochain pullback_flat(const MWExpr& alpha, const Scheme& X, int twist = 0);
// The constant c with x = pullback(c) when x is a cocycle on A^1.
std::optional<MWExpr> h0_membership(const RSCochain& x);

// Atom naming the local equation f as a basis of D(O(C))^-1.
Atom function_atom(const Field& Ft, const Elem& f);
// The V(f)-supported part of d(<(-1)^i>[f] alpha (x) f (x) l).
RSCochain mu_f(const RSCochain& x, const Elem& f);
// sum over zeros and poles x of f of d_x([f] (x) f).
RSCochain ord_tilde(const Elem& f, const Scheme& X);
// Origin component of the differential of a cochain on G_m, extended to A^1.
std::optional<TwistedMW> localization_boundary(const RSCochain& x);

struct ChowWittClass {
  RSCochain cycle;
  int64_t chow_degree = 0;
  // Milnor-Witt degree, available for even twists.
  std::optional<MWExpr> mw_degree;
};
// Divisor class of a section of O(d) on P^1 (a polynomial of degree <= d in
// chart 0), as a cocycle in the O(-d)-twisted complex.
ChowWittClass euler_class_line(int d, const FieldPtr& F, const Poly& section);

// Classical cochain: to_milnor applied pointwise, zero values dropped.
std::vector<std::pair<Point, MWExpr>> chow_comparison(const RSCochain& x);

// mu(x, y; u)(alpha (x) lx, beta (x) ly) = alpha beta (x) lx ly, with one
// factor over the other's base field.
TwistedMW exterior_value(const TwistedMW& a, const TwistedMW& b);
// Product of a cochain on a curve with one on Spec F (either order).
RSCochain exterior_product(const RSCochain& x, const RSCochain& y);

}  // namespace mwcalc
