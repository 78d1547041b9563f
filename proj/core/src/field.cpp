#include "mwcalc/field.hpp"

#include <map>
#include <mutex>

#include "mwcalc/factor.hpp"
#include "mwcalc/poly.hpp"

namespace mwcalc {

namespace {

constexpr uint64_t kMaxFieldSize = 1u << 22;

std::mutex registry_mutex;
std::map<std::string, FieldPtr>& registry() {
  static std::map<std::string, FieldPtr> fields;
  return fields;
}

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<uint64_t> prime_divisors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Prints coefficient lists over the finite field C as a polynomial in var.
std::string render_poly(const Field& C, const std::vector<uint32_t>& c, const std::string& var) {
  std::string out;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    std::string cs = C.str(Elem{c[i]});
    bool compound = cs.find_first_of("+-", 1) != std::string::npos;
    std::string part;
    if (i == 0) {
      part = cs;
    } else {
      std::string mon = i == 1 ? var : var + "^" + std::to_string(i);
      if (cs == "1") {
        part = mon;
      } else if (cs == "-1") {
        part = "-" + mon;
      } else if (compound) {
        part = "(" + cs + ")*" + mon;
      } else {
        part = cs + "*" + mon;
      }
    }
    if (out.empty()) {
      out = part;
    } else if (part[0] == '-') {
      out += part;
    } else {
      out += "+" + part;
    }
  }
  if (out.empty()) return "0";
  return out;
}

size_t term_count(const Poly& f) {
  size_t n = 0;
  for (auto v : f.c) n += v != 0;
  return n;
}

RatFunc normalize(const Field& B, Poly num, Poly den) {
  if (den.is_zero()) throw DomainError("division by zero in F(t)");
  if (num.is_zero()) return RatFunc{Poly{}, poly::constant(1)};
  Poly g = poly::gcd(B, num, den);
  if (g.degree() > 0) {
    num = poly::quot(B, num, g);
    den = poly::quot(B, den, g);
  }
  uint32_t inv = B.finv(den.lead());
  return RatFunc{poly::scale(B, num, inv), poly::scale(B, den, inv)};
}

}  // namespace

FieldPtr Field::prime(uint32_t p) {
  if (p == 2) throw DomainError("characteristic 2 is not supported");
  if (!is_prime(p)) throw DomainError("F" + std::to_string(p) + ": order is not an odd prime");
  if (p > kMaxFieldSize) throw DomainError("prime too large for table arithmetic");
  std::string key = "F" + std::to_string(p);
  std::lock_guard lock(registry_mutex);
  auto& reg = registry();
  if (auto it = reg.find(key); it != reg.end()) return it->second;
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Prime;
  f->key_ = key;
  f->p_ = p;
  f->q_ = p;
  f->qb_ = p;
  f->build_tables();
  reg[key] = f;
  return f;
}

FieldPtr Field::extension(const FieldPtr& base, const Poly& minpoly, const std::string& var) {
  if (!base || !base->is_finite()) throw DomainError("extension: base must be a finite field");
  if (minpoly.degree() < 1 || minpoly.lead() != 1) throw DomainError("extension: modulus must be monic of positive degree");
  std::string key = base->key() + "[" + var + "]/(" + base->poly_str(minpoly, var) + ")";
  {
    std::lock_guard lock(registry_mutex);
    auto& reg = registry();
    if (auto it = reg.find(key); it != reg.end()) return it->second;
  }
  if (!is_irreducible(*base, minpoly)) throw DomainError("extension: modulus " + base->poly_str(minpoly, var) + " is reducible");
  uint64_t q = 1;
  for (int i = 0; i < minpoly.degree(); ++i) {
    q *= base->size();
    if (q > kMaxFieldSize) throw DomainError("extension: field too large for table arithmetic");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Ext;
  f->key_ = key;
  f->base_ = base;
  f->modulus_ = minpoly;
  f->var_ = var;
  f->p_ = base->characteristic();
  f->q_ = static_cast<uint32_t>(q);
  f->k_ = minpoly.degree();
  f->qb_ = base->size();
  f->build_tables();
  std::lock_guard lock(registry_mutex);
  auto& reg = registry();
  if (auto it = reg.find(key); it != reg.end()) return it->second;
  reg[key] = f;
  return f;
}

FieldPtr Field::function_field(const FieldPtr& base, const std::string& var) {
  if (!base || !base->is_finite()) throw DomainError("rational function field requires a finite base");
  std::string key = base->key() + "(" + var + ")";
  std::lock_guard lock(registry_mutex);
  auto& reg = registry();
  if (auto it = reg.find(key); it != reg.end()) return it->second;
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Function;
  f->key_ = key;
  f->base_ = base;
  f->var_ = var;
  f->p_ = base->characteristic();
  reg[key] = f;
  return f;
}

FieldPtr Field::real() {
  std::lock_guard lock(registry_mutex);
  auto& reg = registry();
  if (auto it = reg.find("R"); it != reg.end()) return it->second;
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Real;
  f->key_ = "R";
  reg["R"] = f;
  return f;
}

int Field::degree_over_prime() const {
  if (kind_ == FieldKind::Prime) return 1;
  if (kind_ == FieldKind::Ext) return k_ * base_->degree_over_prime();
  throw DomainError("degree_over_prime: not a finite field");
}

void Field::build_tables() {
  uint64_t order = q_ - 1;
  std::vector<uint64_t> divs = prime_divisors(order);
  // Slow multiplication used only while the tables are being built.
  auto slow_mul = [&](uint32_t a, uint32_t b) -> uint32_t {
    if (kind_ == FieldKind::Prime) return static_cast<uint32_t>(uint64_t(a) * b % p_);
    Poly pa{coords(a)}, pb{coords(b)};
    poly::trim(pa);
    poly::trim(pb);
    Poly r = poly::mod(*base_, poly::mul(*base_, pa, pb), modulus_);
    r.c.resize(k_, 0);
    return from_coords(r.c);
  };
  auto slow_pow = [&](uint32_t a, uint64_t e) {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  gen_ = 0;
  for (uint32_t g = 1; g < q_; ++g) {
    bool primitive = true;
    if (order > 1 && g == 1) primitive = false;
    for (uint64_t r : divs) {
      if (!primitive) break;
      if (slow_pow(g, order / r) == 1) primitive = false;
    }
    if (primitive) {
      gen_ = g;
      break;
    }
  }
  exp_.assign(order, 0);
  log_.assign(q_, 0);
  uint32_t cur = 1;
  for (uint64_t k = 0; k < order; ++k) {
    exp_[k] = cur;
    log_[cur] = static_cast<uint32_t>(k);
    cur = slow_mul(cur, gen_);
  }
  if (kind_ == FieldKind::Ext) {
    zech_.assign(order, -1);
    for (uint64_t k = 0; k < order; ++k) {
      std::vector<uint32_t> c = coords(exp_[k]);
      c[0] = base_->fadd(c[0], 1);
      uint32_t v = from_coords(c);
      zech_[k] = v == 0 ? -1 : static_cast<int32_t>(log_[v]);
    }
  }
  nonsq_ = 0;
  for (uint32_t a = 1; a < q_; ++a) {
    if (log_[a] % 2 == 1) {
      nonsq_ = a;
      break;
    }
  }
}

std::vector<uint32_t> Field::coords(uint32_t a) const {
  std::vector<uint32_t> c(k_, 0);
  for (int i = 0; i < k_; ++i) {
    c[i] = a % qb_;
    a /= qb_;
  }
  return c;
}

uint32_t Field::from_coords(const std::vector<uint32_t>& c) const {
  uint64_t v = 0;
  for (int i = std::min<int>(k_, c.size()) - 1; i >= 0; --i) v = v * qb_ + c[i];
  return static_cast<uint32_t>(v);
}

uint32_t Field::fadd(uint32_t a, uint32_t b) const {
  if (kind_ == FieldKind::Prime) {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (a == 0) return b;
  if (b == 0) return a;
  uint32_t order = q_ - 1;
  uint32_t la = log_[a], lb = log_[b];
  uint32_t d = lb >= la ? lb - la : lb + order - la;
  int32_t z = zech_[d];
  if (z < 0) return 0;
  return exp_[(la + static_cast<uint32_t>(z)) % order];
}

uint32_t Field::fneg(uint32_t a) const {
  if (a == 0) return 0;
  if (kind_ == FieldKind::Prime) return p_ - a;
  uint32_t order = q_ - 1;
  return exp_[(log_[a] + order / 2) % order];
}

uint32_t Field::fmul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (kind_ == FieldKind::Prime) return static_cast<uint32_t>(uint64_t(a) * b % p_);
  uint32_t order = q_ - 1;
  return exp_[(log_[a] + log_[b]) % order];
}

uint32_t Field::finv(uint32_t a) const {
  if (a == 0) throw DomainError("division by zero");
  uint32_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

uint32_t Field::fpow(uint32_t a, int64_t n) const {
  if (a == 0) {
    if (n > 0) return 0;
    if (n == 0) return 1;
    throw DomainError("division by zero");
  }
  int64_t order = q_ - 1;
  int64_t e = (static_cast<int64_t>(log_[a]) * (n % order)) % order;
  if (e < 0) e += order;
  return exp_[e];
}

uint32_t Field::fint(int64_t n) const {
  int64_t r = n % static_cast<int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<uint32_t>(r);
}

uint32_t Field::flog(uint32_t a) const {
  if (a == 0) throw DomainError("discrete log of zero");
  return log_[a];
}

uint32_t Field::fexp(int64_t k) const {
  int64_t order = q_ - 1;
  k %= order;
  if (k < 0) k += order;
  return exp_[k];
}

bool Field::fis_square(uint32_t a) const {
  if (a == 0) throw DomainError("is_square: zero element");
  return log_[a] % 2 == 0;
}

Elem Field::zero() const {
  switch (kind_) {
    case FieldKind::Function: return RatFunc{Poly{}, poly::constant(1)};
    case FieldKind::Real: return Rational(0);
    default: return uint32_t{0};
  }
}

Elem Field::one() const { return from_int(1); }

Elem Field::from_int(int64_t n) const {
  switch (kind_) {
    case FieldKind::Function: return constant(base_->fint(n));
    case FieldKind::Real: return Rational(n);
    default: return fint(n);
  }
}

Elem Field::constant(uint32_t c) const {
  if (kind_ != FieldKind::Function) return c;
  return RatFunc{poly::constant(c), poly::constant(1)};
}

Elem Field::ratfunc(const Poly& num, const Poly& den) const {
  if (kind_ != FieldKind::Function) throw DomainError("ratfunc: not a rational function field");
  return normalize(*base_, num, den);
}

Elem Field::add(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case FieldKind::Function: {
      const auto& x = std::get<RatFunc>(a);
      const auto& y = std::get<RatFunc>(b);
      const Field& B = *base_;
      if (x.den == y.den) return normalize(B, poly::add(B, x.num, y.num), x.den);
      Poly num = poly::add(B, poly::mul(B, x.num, y.den), poly::mul(B, y.num, x.den));
      return normalize(B, num, poly::mul(B, x.den, y.den));
    }
    case FieldKind::Real: return Rational(std::get<Rational>(a) + std::get<Rational>(b));
    default: return fadd(std::get<uint32_t>(a), std::get<uint32_t>(b));
  }
}

Elem Field::neg(const Elem& a) const {
  switch (kind_) {
    case FieldKind::Function: {
      const auto& x = std::get<RatFunc>(a);
      return RatFunc{poly::neg(*base_, x.num), x.den};
    }
    case FieldKind::Real: return Rational(-std::get<Rational>(a));
    default: return fneg(std::get<uint32_t>(a));
  }
}

Elem Field::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Field::mul(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case FieldKind::Function: {
      const auto& x = std::get<RatFunc>(a);
      const auto& y = std::get<RatFunc>(b);
      const Field& B = *base_;
      return normalize(B, poly::mul(B, x.num, y.num), poly::mul(B, x.den, y.den));
    }
    case FieldKind::Real: return Rational(std::get<Rational>(a) * std::get<Rational>(b));
    default: return fmul(std::get<uint32_t>(a), std::get<uint32_t>(b));
  }
}

Elem Field::inv(const Elem& a) const {
  if (is_zero(a)) throw DomainError("division by zero");
  switch (kind_) {
    case FieldKind::Function: {
      const auto& x = std::get<RatFunc>(a);
      return normalize(*base_, x.den, x.num);
    }
    case FieldKind::Real: return Rational(1 / std::get<Rational>(a));
    default: return finv(std::get<uint32_t>(a));
  }
}

Elem Field::pow(const Elem& a, int64_t n) const {
  if (is_finite()) return fpow(std::get<uint32_t>(a), n);
  Elem base = n < 0 ? inv(a) : a;
  uint64_t e = n < 0 ? static_cast<uint64_t>(-n) : static_cast<uint64_t>(n);
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return r;
}

bool Field::is_zero(const Elem& a) const {
  switch (kind_) {
    case FieldKind::Function: return std::get<RatFunc>(a).num.is_zero();
    case FieldKind::Real: return std::get<Rational>(a) == 0;
    default: return std::get<uint32_t>(a) == 0;
  }
}

bool Field::is_one(const Elem& a) const {
  switch (kind_) {
    case FieldKind::Function: {
      const auto& x = std::get<RatFunc>(a);
      return poly::is_one(x.num) && poly::is_one(x.den);
    }
    case FieldKind::Real: return std::get<Rational>(a) == 1;
    default: return std::get<uint32_t>(a) == 1;
  }
}

bool Field::is_square(const Elem& a) const {
  if (is_zero(a)) throw DomainError("is_square: zero element");
  switch (kind_) {
    case FieldKind::Real: return std::get<Rational>(a) > 0;
    case FieldKind::Function: {
      const auto& x = std::get<RatFunc>(a);
      if (!base_->fis_square(x.num.lead())) return false;
      for (const Poly* part : {&x.num, &x.den}) {
        if (part->degree() < 1) continue;
        for (const auto& [fac, mult] : factor(*base_, *part).factors) {
          if (mult % 2 != 0) return false;
        }
      }
      return true;
    }
    default: return fis_square(std::get<uint32_t>(a));
  }
}

bool Field::has_variable(const std::string& name) const {
  if (kind_ == FieldKind::Ext || kind_ == FieldKind::Function) {
    if (name == var_) return true;
    return base_->has_variable(name);
  }
  return false;
}

Elem Field::variable(const std::string& name) const {
  if (kind_ == FieldKind::Function) {
    if (name == var_) return RatFunc{poly::x(), poly::constant(1)};
    return constant(std::get<uint32_t>(base_->variable(name)));
  }
  if (kind_ == FieldKind::Ext) {
    if (name == var_) {
      if (k_ == 1) return base_->fneg(modulus_.c[0]);
      return qb_;
    }
    return base_->variable(name);
  }
  throw DomainError("unknown symbol '" + name + "' for field " + key_);
}

std::string Field::poly_str(const Poly& f, const std::string& var) const {
  return render_poly(*this, f.c, var);
}

std::string Field::str(const Elem& a) const {
  switch (kind_) {
    case FieldKind::Prime: {
      uint32_t v = std::get<uint32_t>(a);
      return v == p_ - 1 ? "-1" : std::to_string(v);
    }
    case FieldKind::Ext: return render_poly(*base_, coords(std::get<uint32_t>(a)), var_);
    case FieldKind::Function: {
      const auto& x = std::get<RatFunc>(a);
      std::string ns = base_->poly_str(x.num, var_);
      if (poly::is_one(x.den)) return ns;
      std::string ds = base_->poly_str(x.den, var_);
      if (term_count(x.num) > 1) ns = "(" + ns + ")";
      if (term_count(x.den) > 1) ds = "(" + ds + ")";
      return ns + "/" + ds;
    }
    case FieldKind::Real: {
      const Rational& r = std::get<Rational>(a);
      return r.str();
    }
  }
  return "?";
}

bool same_field(const Field& a, const Field& b) { return &a == &b || a.key() == b.key(); }

void require_same(const Field& a, const Field& b) {
  if (!same_field(a, b)) throw DomainError("mixed fields: " + a.key() + " and " + b.key());
}

}  // namespace mwcalc
