#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mwcalc/field.hpp"

namespace mwcalc {

inline constexpr uint64_t kDefaultFactorSeed = 0x6d77636175ULL;

struct Factorization {
  uint32_t unit = 1;
  // Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
  std::vector<std::pair<Poly, int>> factors;
};

// Distinct-degree factorization followed by Cantor-Zassenhaus splitting.
// The seed only drives the equal-degree splitting; the output is canonical.
Factorization factor(const Field& F, const Poly& f, uint64_t seed = kDefaultFactorSeed);

bool is_irreducible(const Field& F, const Poly& f);

// Canonical order on monic irreducibles: degree first, then coefficients.
bool poly_order(const Poly& a, const Poly& b);

// All monic irreducible polynomials of the given degree, in canonical order.
std::vector<Poly> monic_irreducibles(const Field& F, int degree);

}  // namespace mwcalc
