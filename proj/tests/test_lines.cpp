#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "mwcalc/lines.hpp"
#include "mwcalc/suites.hpp"
#include "mwcalc/text.hpp"

using namespace mwcalc;

namespace {

// Koszul sign of moving word into the order given by perm (perm[j] = source
// index of the j-th target atom): each inverted pair contributes (-1)^(ab).
int inversion_sign(const std::vector<Atom>& word, const std::vector<size_t>& perm) {
  int s = 1;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j] && (word[perm[i]].grade * word[perm[j]].grade) % 2 != 0) s = -s;
  return s;
}

}  // namespace

TEST_CASE("graded line signs") {
  GradedLine a{{{"a", 1}}}, b{{{"b", -3}}}, c{{{"c", 2}}};
  CHECK(swap_sign(a, b) == -1);
  CHECK(swap_sign(a, c) == 1);
  CHECK(swap_sign(tensor(a, b), a) == 1);
  CHECK(dual_pairing_sign(a) == -1);
  CHECK(dual_pairing_sign(c) == 1);
  GradedLine ab = tensor(a, b);
  CHECK(ab.shift() == -2);
  GradedLine d = dual(ab);
  CHECK(d.shift() == 2);
  CHECK(word_str(d) == word_str(GradedLine{{{"b*", 3}, {"a*", -1}}}));
  CHECK(dual(d) == ab);
  CHECK(place_atom("t").grade == -1);
  CHECK(infinity_atom().grade == -1);
}

TEST_CASE("reorder matches the inversion-sign oracle") {
  FieldPtr F = parse_field("F3");
  Sampler s(11);
  for (int trial = 0; trial < 300; ++trial) {
    size_t n = static_cast<size_t>(s.uniform(2, 5));
    std::vector<Atom> word;
    for (size_t i = 0; i < n; ++i) word.push_back(Atom{"a" + std::to_string(i), static_cast<int>(s.uniform(-2, 2))});
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[static_cast<size_t>(s.uniform(0, static_cast<int64_t>(i) - 1))]);
    GradedLine target;
    for (size_t k : perm) target.word.push_back(word[k]);

    // Degree 0 over F3 so that <-1> differs from 1.
    MWExpr x = parse_mw(F, s.coin() ? "1" : "1 + eta*[-1]");
    TwistedMW r = normalized(reorder(twisted(x, GradedLine{word}), target));
    CHECK(r.line == target);
    MWExpr expect = inversion_sign(word, perm) == 1 ? x : mw_mul(angle(F, F->neg(F->one())), x);
    CHECK(mw_equal(r.expr, expect));
  }
}

TEST_CASE("rebase and normalization preserve the class") {
  FieldPtr F = parse_field("F7");
  Sampler s(5);
  GradedLine w{{{"t*", -1}, {"dt", 1}}};
  for (int trial = 0; trial < 100; ++trial) {
    TwistedMW x = twisted(s.expr(F, static_cast<int>(s.uniform(-1, 1)), 3, 1), w);
    TwistedMW y = rebase(x, s.unit(*F));
    CHECK(twisted_equal(x, y));
    CHECK(F->is_one(normalized(y).scale));
    CHECK(twisted_equal(y, normalized(y)));
  }
  CHECK_THROWS_AS(rebase(twisted(parse_mw(F, "1")), F->zero()), DomainError);
}

TEST_CASE("twisted arithmetic reorders the second operand") {
  FieldPtr F = parse_field("F3");
  GradedLine xy{{{"x", 1}, {"y", 1}}}, yx{{{"y", 1}, {"x", 1}}};
  TwistedMW a = twisted(parse_mw(F, "1"), xy);
  TwistedMW b = twisted(parse_mw(F, "1"), yx);
  // 1 (x) y x = <-1> (x) x y.
  CHECK_FALSE(twisted_equal(a, b));
  CHECK(twisted_equal(twisted(parse_mw(F, "<-1>"), xy), b));
  CHECK(mw_is_zero(normalized(twisted_add(a, b)).expr) == false);
  CHECK(twisted_equal(twisted_add(a, b), twisted(h_expr(F), xy)));
  CHECK_THROWS_AS(reorder(a, GradedLine{{{"x", 1}}}), DomainError);
  CHECK_THROWS_AS(swap_atoms(a, 1), DomainError);
}

TEST_CASE("det_ses_compose divides by the derivative") {
  FieldPtr F = parse_field("F5");
  TwistedMW x = twisted(parse_mw(F, "[2]"), GradedLine{{{"t*", -1}, {"dt", 1}, {"O(2)", 0}}});
  Elem pp = parse_elem(F, "3");
  TwistedMW r = det_ses_compose(x, pp);
  CHECK(r.line == GradedLine{{{"O(2)", 0}}});
  CHECK(mw_equal(normalized(r).expr, mw_mul(angle(F, F->inv(pp)), parse_mw(F, "[2]"))));
  CHECK_THROWS_AS(det_ses_compose(twisted(parse_mw(F, "1"), GradedLine{{{"O(2)", 0}}}), pp), DomainError);
}
