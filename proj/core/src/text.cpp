#include "mwcalc/text.hpp"

#include <cctype>

#include "mwcalc/factor.hpp"
#include "mwcalc/poly.hpp"

namespace mwcalc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

class Parser {
 public:
  explicit Parser(const std::string& s, size_t offset = 0) : s_(s), offset_(offset) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, offset_ + i_); }
  size_t pos() const { return i_; }

  bool at_identifier() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string identifier() {
    skip();
    size_t a = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (a == i_) fail("expected an identifier");
    return s_.substr(a, i_ - a);
  }
  // Looks ahead for an identifier without consuming it.
  std::string peek_identifier() {
    skip();
    size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    return s_.substr(i_, j - i_);
  }
  std::string digits() {
    skip();
    size_t a = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (a == i_) fail("expected an integer");
    return s_.substr(a, i_ - a);
  }
  int64_t integer() {
    bool neg = accept('-');
    std::string d = digits();
    if (d.size() > 17) fail("integer too large");
    int64_t v = std::stoll(d);
    return neg ? -v : v;
  }

  // Element grammar over K.
  Elem elem_sum(const Field& K) {
    Elem acc = elem_term(K);
    while (true) {
      if (accept('+')) {
        acc = K.add(acc, elem_term(K));
      } else if (peek() == '-') {
        ++i_;
        acc = K.sub(acc, elem_term(K));
      } else {
        return acc;
      }
    }
  }
  Elem elem_term(const Field& K) {
    Elem acc = elem_unary(K);
    while (true) {
      if (accept('*')) {
        acc = K.mul(acc, elem_unary(K));
      } else if (accept('/')) {
        size_t at = pos();
        Elem d = elem_unary(K);
        if (K.is_zero(d)) throw ParseError("division by zero", offset_ + at);
        acc = K.div(acc, d);
      } else {
        return acc;
      }
    }
  }
  Elem elem_unary(const Field& K) {
    if (accept('-')) return K.neg(elem_unary(K));
    Elem base = elem_atom(K);
    if (accept('^')) {
      size_t at = pos();
      int64_t e = integer();
      if (e < 0 && K.is_zero(base)) throw ParseError("division by zero", offset_ + at);
      base = K.pow(base, e);
    }
    return base;
  }
  Elem elem_atom(const Field& K) {
    char c = peek();
    if (c == '(') {
      ++i_;
      Elem e = elem_sum(K);
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string d = digits();
      if (K.is_real()) return Rational(boost::multiprecision::cpp_int(d));
      if (K.characteristic() == 0) fail("bad field");
      uint64_t v = 0;
      for (char ch : d) v = (v * 10 + static_cast<uint64_t>(ch - '0')) % K.characteristic();
      return K.from_int(static_cast<int64_t>(v));
    }
    if (at_identifier()) {
      size_t at = pos();
      std::string name = identifier();
      if (!K.has_variable(name)) throw ParseError("unknown element literal '" + name + "'", offset_ + at);
      return K.variable(name);
    }
    fail("expected an element");
  }

 private:
  const std::string& s_;
  size_t offset_;
  size_t i_ = 0;
};

bool is_prime_number(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldPtr prime_power_field(uint64_t q) {
  if (is_prime_number(q)) return Field::prime(static_cast<uint32_t>(q));
  uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) throw DomainError("F" + std::to_string(q) + ": not a prime power");
  int k = 0;
  uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) throw DomainError("F" + std::to_string(q) + ": not a prime power");
  FieldPtr Fp = Field::prime(static_cast<uint32_t>(p));
  return Field::extension(Fp, monic_irreducibles(*Fp, k).front(), "x");
}

// Index of the parenthesis matching the one at s[open].
size_t matching_paren(const std::string& s, size_t open) {
  int depth = 0;
  for (size_t j = open; j < s.size(); ++j) {
    if (s[j] == '(') ++depth;
    if (s[j] == ')' && --depth == 0) return j;
  }
  throw ParseError("unbalanced parenthesis", open);
}

// Splits at top-level occurrences of sep.
std::vector<std::pair<size_t, std::string>> split_top(const std::string& s, char sep) {
  std::vector<std::pair<size_t, std::string>> out;
  int depth = 0;
  size_t start = 0;
  for (size_t j = 0; j <= s.size(); ++j) {
    if (j < s.size()) {
      char c = s[j];
      if (c == '(' || c == '[' || c == '<') ++depth;
      if (c == ')' || c == ']' || c == '>') --depth;
      if (!(c == sep && depth == 0)) continue;
    }
    out.emplace_back(start, s.substr(start, j - start));
    start = j + 1;
  }
  return out;
}

class ExprParser {
 public:
  ExprParser(const FieldPtr& F, const std::string& s) : F_(F), p_(s) {}

  ParsedExpr run() {
    MWExpr e = sum();
    std::optional<int> twist;
    if (p_.accept('@')) twist = twist_literal();
    if (!p_.done()) p_.fail("unexpected input");
    return ParsedExpr{e, twist};
  }

 private:
  MWExpr sum() {
    MWExpr acc = product();
    while (true) {
      size_t at = p_.pos();
      try {
        if (p_.accept('+')) {
          acc = mw_add(acc, product());
        } else if (p_.peek() == '-') {
          p_.accept('-');
          acc = mw_sub(acc, product());
        } else {
          return acc;
        }
      } catch (const ParseError&) {
        throw;
      } catch (const DomainError& e) {
        throw ParseError(e.what(), at);
      }
    }
  }
  MWExpr product() {
    MWExpr acc = unary();
    while (p_.accept('*')) acc = mw_mul(acc, unary());
    return acc;
  }
  MWExpr unary() {
    if (p_.accept('-')) return mw_neg(unary());
    return primary();
  }
  std::vector<Elem> elems(char close) {
    std::vector<Elem> out;
    do {
      size_t at = p_.pos();
      Elem a = p_.elem_sum(*F_);
      if (F_->is_zero(a)) throw ParseError("zero slot", at);
      out.push_back(a);
    } while (p_.accept(','));
    p_.expect(close);
    return out;
  }
  MWExpr primary() {
    char c = p_.peek();
    if (c == '(') {
      p_.accept('(');
      MWExpr e = sum();
      p_.expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string d = p_.digits();
      if (d.size() > 17) p_.fail("integer too large");
      return MWExpr::constant(F_, std::stoll(d));
    }
    if (c == '[') {
      p_.accept('[');
      return MWExpr::symbol(F_, elems(']'));
    }
    if (c == '<') {
      p_.accept('<');
      MWExpr acc(F_, 0);
      for (const auto& u : elems('>')) acc = mw_add(acc, angle(F_, u));
      return acc;
    }
    if (p_.at_identifier()) {
      size_t at = p_.pos();
      std::string id = p_.identifier();
      if (id == "eta") {
        int n = 1;
        if (p_.accept('^')) {
          int64_t v = p_.integer();
          if (v < 0) throw ParseError("negative eta power", at);
          n = static_cast<int>(v);
        }
        return eta(F_, n);
      }
      if (id == "h") return h_expr(F_);
      if (id == "eps") return eps_expr(F_);
      if (id == "neps") {
        p_.expect('(');
        int64_t n = p_.integer();
        p_.expect(')');
        return n_eps_expr(F_, n);
      }
      if (id == "pf") {
        p_.expect('(');
        MWExpr acc = MWExpr::constant(F_, 1);
        for (const auto& a : elems(')')) acc = mw_mul(acc, mw_add(angle(F_, F_->from_int(-1)), angle(F_, a)));
        return acc;
      }
      throw ParseError("unknown symbol '" + id + "'", at);
    }
    p_.fail("expected an expression");
  }
  int twist_literal() {
    std::string id = p_.identifier();
    if (id == "omega") return -2;
    if (id == "triv") return 0;
    if (id == "O") {
      p_.expect('(');
      int64_t d = p_.integer();
      p_.expect(')');
      return static_cast<int>(d);
    }
    p_.fail("unknown twist '" + id + "'");
  }

  FieldPtr F_;
  Parser p_;
};

}  // namespace

FieldPtr parse_field(const std::string& raw) {
  std::string s = trim(raw);
  if (s == "R") return Field::real();
  std::string name;
  size_t eq = s.find('=');
  size_t start = 0;
  if (eq != std::string::npos) {
    name = trim(s.substr(0, eq));
    start = eq + 1;
  }
  std::string body = trim(s.substr(start));
  Parser b(body, start);
  if (b.peek() != 'F') b.fail("field descriptor must start with F");
  b.accept('F');
  std::string q = b.digits();
  if (q.size() > 9) b.fail("field too large");
  FieldPtr F = prime_power_field(std::stoull(q));
  size_t j = 0;
  auto at = [&]() { return start + j; };
  // Re-scan the remainder by hand so polynomial bodies can use nested parentheses.
  j = body.find_first_not_of("0123456789", body.find('F') + 1);
  while (j != std::string::npos && j < body.size()) {
    while (j < body.size() && std::isspace(static_cast<unsigned char>(body[j]))) ++j;
    if (j >= body.size()) break;
    if (body[j] == '[') {
      size_t close = body.find(']', j);
      if (close == std::string::npos) throw ParseError("expected ']'", at());
      std::string var = trim(body.substr(j + 1, close - j - 1));
      if (var.empty() || F->has_variable(var)) throw ParseError("bad or clashing variable '" + var + "'", at());
      j = body.find_first_not_of(" \t", close + 1);
      if (j == std::string::npos || body[j] != '/') throw ParseError("expected '/'", at());
      j = body.find_first_not_of(" \t", j + 1);
      if (j == std::string::npos || body[j] != '(') throw ParseError("expected '('", at());
      size_t end = matching_paren(body, j);
      Poly m = parse_poly(F, body.substr(j + 1, end - j - 1), var);
      if (m.lead() != 1) throw ParseError("modulus must be monic", at());
      if (!is_irreducible(*F, m)) throw ParseError("modulus is reducible", at());
      F = Field::extension(F, m, var);
      j = end + 1;
    } else if (body[j] == '(') {
      size_t end = matching_paren(body, j);
      std::string var = trim(body.substr(j + 1, end - j - 1));
      if (var.empty() || F->has_variable(var)) throw ParseError("bad or clashing variable '" + var + "'", at());
      F = Field::function_field(F, var);
      j = end + 1;
      if (body.find_first_not_of(" \t", j) != std::string::npos) throw ParseError("unexpected input after function field", at());
      break;
    } else {
      throw ParseError("unexpected character in field descriptor", at());
    }
  }
  if (!name.empty() && name[0] == 'F' && name.size() > 1 &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const Field& fin = F->is_function_field() ? *F->base() : *F;
    if (std::stoull(name.substr(1)) != fin.size()) throw DomainError("field name " + name + " does not match its size");
  }
  return F;
}

Elem parse_elem(const FieldPtr& F, const std::string& text) {
  Parser p(text);
  Elem e = p.elem_sum(*F);
  if (!p.done()) p.fail("unexpected input");
  return e;
}

Poly parse_poly(const FieldPtr& F, const std::string& text, const std::string& var) {
  if (!F->is_finite()) throw DomainError("polynomials need a finite coefficient field");
  if (F->has_variable(var)) throw DomainError("variable '" + var + "' clashes with the coefficient field");
  FieldPtr Ft = Field::function_field(F, var);
  Elem e = parse_elem(Ft, text);
  const auto& f = std::get<RatFunc>(e);
  if (!poly::is_one(f.den)) throw DomainError("not a polynomial: " + text);
  return f.num;
}

ValuationSpec parse_place(const FieldPtr& Ft, const std::string& text) {
  if (!Ft->is_function_field()) throw DomainError("places live on F_q(t)");
  std::string s = trim(text);
  if (s == "inf") return ValuationSpec::at_infinity();
  Poly p = parse_poly(Ft->base(), s, Ft->var());
  if (p.degree() < 1 || p.lead() != 1) throw DomainError("a place must be a monic polynomial of positive degree");
  if (!is_irreducible(*Ft->base(), p)) throw DomainError("a place must be irreducible: " + s);
  return ValuationSpec::padic(p);
}

ParsedExpr parse_expr(const FieldPtr& F, const std::string& text) { return ExprParser(F, text).run(); }

MWExpr parse_mw(const FieldPtr& F, const std::string& text) {
  ParsedExpr e = parse_expr(F, text);
  if (e.twist) throw DomainError("unexpected twist suffix");
  return e.expr;
}

int parse_twist(const std::string& text) {
  std::string s = trim(text);
  if (!s.empty() && s[0] == '@') s = trim(s.substr(1));
  if (s == "omega") return -2;
  if (s == "triv") return 0;
  if (s.size() > 3 && s.rfind("O(", 0) == 0 && s.back() == ')') {
    try {
      size_t used = 0;
      int d = std::stoi(s.substr(2, s.size() - 3), &used);
      if (used == s.size() - 3) return d;
    } catch (const std::exception&) {
    }
  }
  throw DomainError("unknown twist '" + text + "' (use O(d), omega or triv)");
}

RSCochain parse_cochain(const Scheme& X, int twist, const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty() || s[0] != '{') {
    ParsedExpr e = parse_expr(X.function_field(), s);
    return generic_cochain(X, e.expr, e.twist.value_or(twist));
  }
  if (s.back() != '}') throw ParseError("expected '}'", s.size());
  if (X.kind == SchemeKind::Point) throw DomainError("Spec F has no closed points of codimension 1");
  std::string inner = s.substr(1, s.size() - 2);
  RSCochain c{X, 1, 0, twist, {}};
  bool first = true;
  for (const auto& [off, entry] : split_top(inner, ';')) {
    if (trim(entry).empty()) continue;
    size_t colon = entry.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'point: expression'", off + 1);
    std::string where = trim(entry.substr(0, colon));
    Point pt = Point::infinity();
    if (where != "inf") {
      ValuationSpec v = parse_place(X.function_field(), where);
      pt = Point::closed(v.p);
    }
    MWExpr value = parse_mw(point_field(X, pt), entry.substr(colon + 1));
    RSCochain one = point_cochain(X, pt, value, twist);
    if (!first && one.weight != c.weight && !value.is_zero()) throw DomainError("cochain values of different degrees");
    if (first || !value.is_zero()) c.weight = one.weight;
    first = false;
    c.set(pt, one.values.front().second);
  }
  return c;
}

std::string to_string(const MWExpr& x) {
  if (x.is_zero()) return "0";
  const Field& F = *x.field();
  std::string out;
  for (const auto& [k, c] : x.terms()) {
    std::string body;
    if (k.eta > 0) body = k.eta == 1 ? "eta" : "eta^" + std::to_string(k.eta);
    if (!k.slots.empty()) {
      std::string br = "[";
      for (size_t i = 0; i < k.slots.size(); ++i) {
        if (i) br += ",";
        br += F.str(k.slots[i]);
      }
      br += "]";
      body = body.empty() ? br : body + "*" + br;
    }
    int64_t a = c < 0 ? -c : c;
    std::string term;
    if (body.empty()) {
      term = std::to_string(a);
    } else {
      term = a == 1 ? body : std::to_string(a) + "*" + body;
    }
    if (out.empty()) {
      out = c < 0 ? "-" + term : term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

std::string to_string(const TwistedMW& x) {
  TwistedMW n = normalized(x);
  std::string s = to_string(n.expr);
  if (!n.line.word.empty()) s += " @ " + word_str(n.line);
  return s;
}

std::string to_string(const RSCochain& x) {
  if (x.values.empty()) return "0";
  std::string out;
  for (const auto& [pt, v] : x.values) {
    if (!out.empty()) out += "\n";
    out += point_str(x.scheme, pt) + ": " + to_string(v);
  }
  return out;
}

std::string tri_str(Tri t) {
  switch (t) {
    case Tri::Yes: return "true";
    case Tri::No: return "false";
    case Tri::Undecided: return "undecided";
  }
  return "?";
}

}  // namespace mwcalc
