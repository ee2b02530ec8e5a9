#include "cpbom/normal_order.hpp"

#include <array>

#include "cpbom/errors.hpp"

namespace cpbom {

namespace {

constexpr int kCavityDegree = 12;  // x_c^4 cubed
constexpr int kMechDegree = 6;     // x_m^2 cubed

using Poly = std::array<std::array<double, kMechDegree + 1>, kCavityDegree + 1>;

constexpr double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

constexpr auto kTable = [] {
  constexpr int n_max = kMaxNormalOrderDegree;
  std::array<std::array<std::array<double, n_max + 1>, n_max + 1>, n_max + 1> t{};
  for (int n = 0; n <= n_max; ++n) {
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; p + q <= n; ++q) {
        if ((n - p - q) % 2 != 0) continue;
        const int pairs = (n - p - q) / 2;
        double pow2 = 1.0;
        for (int i = 0; i < pairs; ++i) pow2 *= 2.0;
        t[n][p][q] = factorial(n) / (factorial(p) * factorial(q) * factorial(pairs) * pow2);
      }
    }
  }
  return t;
}();

Poly multiply(const Poly& lhs, const Poly& rhs) {
  Poly out{};
  for (int a = 0; a <= kCavityDegree; ++a) {
    for (int c = 0; c <= kMechDegree; ++c) {
      if (lhs[a][c] == 0.0) continue;
      for (int a2 = 0; a + a2 <= kCavityDegree; ++a2) {
        for (int c2 = 0; c + c2 <= kMechDegree; ++c2) {
          out[a + a2][c + c2] += lhs[a][c] * rhs[a2][c2];
        }
      }
    }
  }
  return out;
}

}  // namespace

double normal_order_coefficient(int n, int p, int q) {
  if (n < 0 || n > kMaxNormalOrderDegree || p < 0 || q < 0 || p + q > n) {
    if (n > kMaxNormalOrderDegree) {
      throw Error(ErrorCode::ConfigInvalid, "normal-order table covers degree <= 8");
    }
    return 0.0;
  }
  return kTable[n][p][q];
}

SeriesCouplings series_couplings(const GreekCoefficients& g, double b_norm, int order) {
  if (order < 1 || order > 3) throw Error(ErrorCode::ConfigInvalid, "series order must be 1..3");
  if (!(b_norm > 0.0)) throw Error(ErrorCode::DegeneratePoint, "qubit splitting vanishes");

  Poly x{};
  x[1][0] = g.alpha;
  x[2][0] = g.beta;
  x[3][0] = g.rho;
  x[4][0] = g.delta;
  x[0][1] = g.epsilon;
  x[0][2] = g.lambda;

  // Binomial series of sqrt(1 + y): 1, 1/2, -1/8, 1/16.
  constexpr std::array<double, 4> binomial{1.0, 0.5, -0.125, 0.0625};
  Poly power = x;
  Poly energy{};
  double scale = 1.0 / (b_norm * b_norm);
  for (int k = 1; k <= order; ++k) {
    const double weight = -0.5 * b_norm * binomial[static_cast<std::size_t>(k)] * scale;
    for (int a = 0; a <= kCavityDegree; ++a) {
      for (int c = 0; c <= kMechDegree; ++c) energy[a][c] += weight * power[a][c];
    }
    power = multiply(power, x);
    scale /= b_norm * b_norm;
  }

  double rp_term = 0.0;  // coefficient of a^dagger a b
  double ck_term = 0.0;  // coefficient of a^dagger a b^dagger b
  for (int a = 2; a <= kCavityDegree; ++a) {
    for (int c = 1; c <= kMechDegree; ++c) {
      if (energy[a][c] == 0.0) continue;
      const double photon = normal_order_coefficient(a, 1, 1);
      rp_term += energy[a][c] * photon * normal_order_coefficient(c, 0, 1);
      ck_term += energy[a][c] * photon * normal_order_coefficient(c, 1, 1);
    }
  }
  return {-rp_term / kPhys.hbar, ck_term / kPhys.hbar};
}

}  // namespace cpbom
