#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mwcalc/field.hpp"
#include "mwcalc/forms.hpp"

namespace mwcalc {

// Identifies a generator eta^m [a1,...,ar].
struct TermKey {
  int eta = 0;
  std::vector<Elem> slots;

  bool operator<(const TermKey& o) const {
    if (eta != o.eta) return eta < o.eta;
    return slots < o.slots;
  }
  bool operator==(const TermKey& o) const { return eta == o.eta && slots == o.slots; }
};

// Homogeneous Z-combination of generators eta^m [a1,...,ar] of degree r - m.
class MWExpr {
 public:
  MWExpr(FieldPtr field, int degree) : field_(std::move(field)), degree_(degree) {}

  static MWExpr constant(const FieldPtr& F, int64_t n);
  static MWExpr symbol(const FieldPtr& F, std::vector<Elem> slots, int eta = 0, int64_t coeff = 1);

  const FieldPtr& field() const { return field_; }
  int degree() const { return degree_; }
  const std::map<TermKey, int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(int eta, std::vector<Elem> slots, int64_t coeff);
  void add_term(const TermKey& key, int64_t coeff);

  bool operator==(const MWExpr& o) const;

 private:
  FieldPtr field_;
  int degree_;
  std::map<TermKey, int64_t> terms_;
};

enum class Tri { No, Yes, Undecided };

// Generators and ring operations.
MWExpr bracket(const FieldPtr& F, const Elem& a);
MWExpr symbols(const FieldPtr& F, const std::vector<Elem>& a);
MWExpr eta(const FieldPtr& F, int power = 1);
MWExpr angle(const FieldPtr& F, const Elem& u);
MWExpr h_expr(const FieldPtr& F);
MWExpr eps_expr(const FieldPtr& F);
MWExpr n_eps_expr(const FieldPtr& F, int64_t n);
MWExpr mw_add(const MWExpr& x, const MWExpr& y);
MWExpr mw_sub(const MWExpr& x, const MWExpr& y);
MWExpr mw_neg(const MWExpr& x);
MWExpr mw_scale(const MWExpr& x, int64_t n);
MWExpr mw_mul(const MWExpr& x, const MWExpr& y);
MWExpr mw_mul(const std::vector<MWExpr>& factors);

// Sound partial reducer: drops [1] slots, Steinberg pairs and [a,-a] pairs,
// rewrites adjacent [a,a] to [-1,a] and merges terms.
MWExpr simplify(const MWExpr& x);
// Removes terms containing the slot 1 (always sound, used on raw outputs).
MWExpr drop_unit_slots(const MWExpr& x);

// K^M image: all terms carrying eta are killed.
MWExpr to_milnor(const MWExpr& x);

// Canonical K^M_n(F_q) value: an integer for n = 0, a discrete log modulo q-1
// (least primitive root) for n = 1, and 0 otherwise. modulus 0 means Z.
struct MilnorValue {
  int degree = 0;
  int64_t value = 0;
  int64_t modulus = 0;
  bool operator==(const MilnorValue&) const = default;
};
MilnorValue milnor_invariant(const MWExpr& x);

// j_n: image in I^n inside W, through <<a1,...,ar>> for eta^m [a1,...,ar].
WittClass j_n(const MWExpr& x);

// Cartesian-square invariant pair over a finite field.
struct MWInvariantPair {
  MilnorValue milnor;
  WittClass form;
  bool operator==(const MWInvariantPair&) const = default;
};
MWInvariantPair invariant_pair(const MWExpr& x);

// Degree-0 identification with GW.
GWForm mw0_to_gw(const MWExpr& x);
GWClass mw0_class(const MWExpr& x);
MWExpr gw_to_mw0(const GWForm& f);

// h_n({a1,...,an}) = [a1^2, a2, ..., an]
MWExpr h_n(const FieldPtr& F, const std::vector<Elem>& a);

// Decidable equality: finite fields through the Cartesian square, F(t)
// through residues plus a constant part, the real model three-valued.
Tri mw_compare(const MWExpr& x, const MWExpr& y);
// Same as mw_compare but requires a decidable owner field.
bool mw_equal(const MWExpr& x, const MWExpr& y);
bool mw_is_zero(const MWExpr& x);

// Unique representative of the class of x over a finite field.
MWExpr normal_form(const MWExpr& x);

// Applies an element map to every slot, producing an expression over target.
MWExpr map_slots(const MWExpr& x, const FieldPtr& target, const std::function<Elem(const Elem&)>& f);
// Constant embedding F -> F(t).
MWExpr pullback(const MWExpr& x, const FieldPtr& function_field);

}  // namespace mwcalc
