#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mwcalc {

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rational = boost::multiprecision::cpp_rational;

// Polynomial over a finite field. Coefficients are element indices of the
// coefficient field, lowest degree first, with no trailing zeros.
struct Poly {
  std::vector<uint32_t> c;

  int degree() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  uint32_t lead() const { return c.empty() ? 0 : c.back(); }
  uint32_t coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : 0; }
  auto operator<=>(const Poly&) const = default;
};

// Element of F(t): a reduced fraction with monic denominator.
struct RatFunc {
  Poly num;
  Poly den;
  auto operator<=>(const RatFunc&) const = default;
};

// Field elements carry no owner; every operation goes through a Field.
// Finite fields use an index (0 is zero, 1 is one), F(t) a RatFunc and the
// real model an exact rational.
using Elem = std::variant<uint32_t, RatFunc, Rational>;

enum class FieldKind { Prime, Ext, Function, Real };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static FieldPtr prime(uint32_t p);
  // base[var]/(minpoly); minpoly must be monic irreducible over a finite base.
  static FieldPtr extension(const FieldPtr& base, const Poly& minpoly, const std::string& var);
  static FieldPtr function_field(const FieldPtr& base, const std::string& var = "t");
  static FieldPtr real();

  FieldKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == FieldKind::Prime || kind_ == FieldKind::Ext; }
  bool is_function_field() const { return kind_ == FieldKind::Function; }
  bool is_real() const { return kind_ == FieldKind::Real; }
  const std::string& key() const { return key_; }
  const FieldPtr& base() const { return base_; }
  const Poly& modulus() const { return modulus_; }
  const std::string& var() const { return var_; }
  uint32_t characteristic() const { return p_; }
  // Number of elements (finite fields only).
  uint32_t size() const { return q_; }
  int degree_over_base() const { return k_; }
  int degree_over_prime() const;

  // Index arithmetic for finite fields.
  uint32_t fadd(uint32_t a, uint32_t b) const;
  uint32_t fsub(uint32_t a, uint32_t b) const { return fadd(a, fneg(b)); }
  uint32_t fneg(uint32_t a) const;
  uint32_t fmul(uint32_t a, uint32_t b) const;
  uint32_t finv(uint32_t a) const;
  uint32_t fdiv(uint32_t a, uint32_t b) const { return fmul(a, finv(b)); }
  uint32_t fpow(uint32_t a, int64_t n) const;
  uint32_t fint(int64_t n) const;
  // Discrete log with respect to generator(); a must be nonzero.
  uint32_t flog(uint32_t a) const;
  uint32_t fexp(int64_t k) const;
  // Least primitive element (by index).
  uint32_t generator() const { return gen_; }
  uint32_t least_nonsquare() const { return nonsq_; }
  uint32_t minus_one() const { return fneg(1); }
  bool fis_square(uint32_t a) const;
  // Coordinates over the base field (Ext only) and back.
  std::vector<uint32_t> coords(uint32_t a) const;
  uint32_t from_coords(const std::vector<uint32_t>& c) const;
  // Embedding of a base-field element.
  uint32_t embed(uint32_t b) const { return b; }

  // Generic element interface.
  Elem zero() const;
  Elem one() const;
  Elem from_int(int64_t n) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, int64_t n) const;
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const;
  bool is_square(const Elem& a) const;
  // The adjoined variable (Ext, Function) looked up by name along the tower.
  bool has_variable(const std::string& name) const;
  Elem variable(const std::string& name) const;
  std::string str(const Elem& a) const;

  // F(t) helpers.
  Elem ratfunc(const Poly& num, const Poly& den) const;
  Elem from_poly(const Poly& p) const { return ratfunc(p, Poly{{1}}); }
  Elem constant(uint32_t c) const;

  std::string poly_str(const Poly& f, const std::string& var) const;
  std::string poly_str(const Poly& f) const { return poly_str(f, var_); }

 private:
  Field() = default;
  void build_tables();

  FieldKind kind_ = FieldKind::Prime;
  std::string key_;
  FieldPtr base_;
  Poly modulus_;
  std::string var_;
  uint32_t p_ = 0;
  uint32_t q_ = 0;
  int k_ = 1;
  uint32_t qb_ = 0;
  uint32_t gen_ = 0;
  uint32_t nonsq_ = 0;
  std::vector<uint32_t> exp_;
  std::vector<uint32_t> log_;
  std::vector<int32_t> zech_;
};

bool same_field(const Field& a, const Field& b);
void require_same(const Field& a, const Field& b);

}  // namespace mwcalc
