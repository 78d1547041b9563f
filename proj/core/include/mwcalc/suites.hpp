#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mwcalc/field.hpp"
#include "mwcalc/mw.hpp"
#include "mwcalc/residue.hpp"

namespace mwcalc {

// Seeded generator of random test inputs. Uses only raw mt19937_64 output so
// the streams are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}

  uint64_t next() { return rng_(); }
  // Uniform in [lo, hi].
  int64_t uniform(int64_t lo, int64_t hi);
  bool coin(int num = 1, int den = 2);
  // Nonzero element of a finite field.
  Elem unit(const Field& F);
  Poly poly(const Field& F, int max_degree, bool monic = false, int min_degree = 0);
  Poly irreducible(const Field& F, int degree);
  // Nonzero element of F(t) with numerator and denominator of degree <= max_degree.
  Elem ratfunc(const Field& Ft, int max_degree);
  // Homogeneous expression of the given degree over F (finite or F(t)).
  MWExpr expr(const FieldPtr& F, int degree, int max_terms, int max_extra_slots, int max_slot_degree = 2);

 private:
  std::mt19937_64 rng_;
};

struct SuiteReport {
  std::string name;
  int64_t passed = 0;
  int64_t total = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  double seconds = 0;

  bool ok() const { return passed == total && failures.empty(); }
  void check(bool ok, const std::function<std::string()>& describe);
};

std::vector<std::string> suite_names();
bool has_suite(const std::string& name);
SuiteReport run_suite(const std::string& name, uint64_t seed);
std::string format_report(const SuiteReport& r);

// Shared by the CLI: reciprocity_defect on random inputs over Ft.
SuiteReport reciprocity_run(const FieldPtr& Ft, int samples, uint64_t seed);

}  // namespace mwcalc
