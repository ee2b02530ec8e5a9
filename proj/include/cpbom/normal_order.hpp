#pragma once

#include "cpbom/perturbative.hpp"

namespace cpbom {

inline constexpr int kMaxNormalOrderDegree = 8;

// Coefficient of (a^dagger)^p a^q in the normal-ordered form of (a + a^dagger)^n,
// for n <= kMaxNormalOrderDegree. Zero when n - p - q is odd or negative.
double normal_order_coefficient(int n, int p, int q);

struct SeriesCouplings {
  double g_rp;  // rad/s
  double g_ck;  // rad/s
};

// Independent route to the order-2/3 couplings without xi terms: expands
// -B/2 sqrt(1 + X/B^2) as a polynomial in commuting x_c, x_m and reads off the
// a^dagger a (b + b^dagger) and a^dagger a b^dagger b coefficients.
SeriesCouplings series_couplings(const GreekCoefficients& greek, double b_norm, int order);

}  // namespace cpbom
