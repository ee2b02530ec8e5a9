#include "cpbom/perturbative.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "cpbom/capnet.hpp"
#include "cpbom/errors.hpp"

namespace cpbom {

namespace {

double checked_norm(const QubitFields& fields) {
  if (!(fields.b_norm > 0.0)) {
    throw Error(ErrorCode::DegeneratePoint, "qubit splitting vanishes");
  }
  return fields.b_norm;
}

void check_order(int order) {
  if (order != 2 && order != 3) {
    throw Error(ErrorCode::ConfigInvalid, "expansion order must be 2 or 3");
  }
}

// cos(pi f) and sin(pi f), exact at half-integer flux so the splitting can
// vanish there instead of leaving a ~1e-16 E_J remainder.
std::pair<double, double> flux_phase(double f) {
  const double reduced = f - 2.0 * std::round(f / 2.0);  // in [-1, 1]
  if (std::abs(reduced) == 0.5) return {0.0, reduced > 0.0 ? 1.0 : -1.0};
  const double phase = std::numbers::pi * reduced;
  return {std::cos(phase), std::sin(phase)};
}

}  // namespace

QubitFields qubit_fields(const ValidatedParams& params, BiasPoint bias) {
  const auto [cos_phase, sin_phase] = flux_phase(bias.f);
  QubitFields q{};
  q.b1 = params.e_j() * cos_phase;
  q.b2 = params.e_j() * params.asymmetry() * sin_phase;
  q.b3 = -4.0 * params.e_c() * (1.0 - 2.0 * bias.n_g0);
  q.b_norm = std::sqrt(q.b1 * q.b1 + q.b2 * q.b2 + q.b3 * q.b3);
  return q;
}

CouplingCoefficients coupling_coefficients(const ValidatedParams& params, BiasPoint bias) {
  const QubitFields q = qubit_fields(params, bias);
  const double e = kPhys.e_charge;
  const double eta = params.eta();
  const InfiniteBiasLimits limits =
      infinite_bias_limits(network_capacitances(params, params.raw().c_g10));
  const double charge_scale = 2.0 * e * limits.shorthands.inv_c_sigma1c * params.q_zp();

  CouplingCoefficients c{};
  c.eta = eta;
  c.g1 = -q.b1 * eta / 2.0;
  c.g2 = q.b1 * eta * eta / 4.0;
  c.g3 = q.b2 * eta / 2.0;
  c.g4 = q.b2 * eta * eta / 4.0;
  c.g_m = -(2.0 / e) * params.e_c() * params.raw().v_gate * params.geometry().c_g1_prime *
          params.raw().x_zp;
  c.g_cp = charge_scale * bias.n_g0;
  c.g_cm = charge_scale * params.geometry().dng_dx * params.raw().x_zp;
  return c;
}

GreekCoefficients greek_coefficients(const QubitFields& q, const CouplingCoefficients& c) {
  GreekCoefficients g{};
  g.alpha = -4.0 * (q.b1 * c.g3 + q.b2 * c.g1);
  g.beta = 4.0 * (c.g3 * c.g3 + c.g1 * c.g1 - q.b1 * c.g2 - q.b2 * c.g4);
  g.rho = 8.0 * (c.g2 * c.g3 + c.g1 * c.g4);
  g.delta = 4.0 * (c.g2 * c.g2 + c.g4 * c.g4);
  g.epsilon = 4.0 * q.b3 * c.g_m;
  g.lambda = 4.0 * c.g_m * c.g_m;
  g.xi1 = 4.0 * q.b3 * c.g_cp;
  g.xi2 = 4.0 * c.g_cp * c.g_cp;
  g.xi3 = 4.0 * (2.0 * c.g_cp * c.g_m - q.b3 * c.g_cm);
  g.xi4 = -8.0 * c.g_cp * c.g_cm;
  g.xi5 = -8.0 * c.g_m * c.g_cm;
  return g;
}

double grp_perturbative(const QubitFields& q, const CouplingCoefficients& c, int order, XiTerms xi) {
  check_order(order);
  const double b = checked_norm(q);
  GreekCoefficients g = greek_coefficients(q, c);
  const double b2 = b * b;
  const double b3 = b2 * b;
  double hbar_g = 0.0;
  if (order == 2) {
    if (xi == XiTerms::dropped) g.xi2 = g.xi4 = 0.0;
    hbar_g = g.xi4 / (2.0 * b) -
             (g.epsilon * (g.beta + 6.0 * g.delta + g.xi2) +
              g.xi4 * (2.0 * g.beta - 3.0 * g.delta + 3.0 * g.lambda)) /
                 (4.0 * b3);
  } else {
    const double bracket =
        -4.0 * b2 * (g.beta + 6.0 * g.delta) + 3.0 * g.alpha * g.alpha +
        36.0 * g.alpha * g.rho + 135.0 * g.rho * g.rho +
        18.0 * (g.beta * g.beta + 15.0 * g.beta * g.delta + 70.0 * g.delta * g.delta +
                g.beta * g.lambda + 6.0 * g.delta * g.lambda);
    hbar_g = g.epsilon / (16.0 * b3 * b2) * bracket;
  }
  return hbar_g / kPhys.hbar;
}

double gck_perturbative(const QubitFields& q, const CouplingCoefficients& c, int order, XiTerms xi) {
  check_order(order);
  const double b = checked_norm(q);
  GreekCoefficients g = greek_coefficients(q, c);
  const double b2 = b * b;
  const double b3 = b2 * b;
  const double bd = g.beta + 6.0 * g.delta;
  double hbar_g = 0.0;
  if (order == 2) {
    if (xi == XiTerms::dropped) g.xi3 = g.xi4 = g.xi5 = 0.0;
    hbar_g = (2.0 * g.lambda * bd + g.xi3 * g.xi3 + 6.0 * g.xi4 * g.xi4 + 6.0 * g.xi5 * g.xi5 +
              2.0 * g.epsilon * g.xi4 + 2.0 * g.lambda * g.xi4) /
             (4.0 * b3);
  } else {
    const double bracket = -4.0 * b2 * bd + 3.0 * g.alpha * g.alpha + 36.0 * g.alpha * g.rho +
                           135.0 * g.rho * g.rho +
                           18.0 * (g.beta * g.beta + 15.0 * g.beta * g.delta +
                                   70.0 * g.delta * g.delta);
    hbar_g = -1.0 / (8.0 * b3 * b2) *
             (g.lambda * bracket + 3.0 * bd * g.epsilon * g.epsilon +
              18.0 * bd * g.lambda * g.lambda);
  }
  return hbar_g / kPhys.hbar;
}

double quantized_cavity_frequency(const ValidatedParams& params) {
  const InfiniteBiasLimits limits =
      infinite_bias_limits(network_capacitances(params, params.raw().c_g10));
  return std::sqrt(limits.shorthands.inv_c_sigmac / params.raw().l_cavity);
}

CouplingResult perturbative_couplings(const ValidatedParams& params, BiasPoint bias, int order) {
  const QubitFields q = qubit_fields(params, bias);
  const CouplingCoefficients c = coupling_coefficients(params, bias);
  CouplingResult r{};
  r.model_tag = order == 2 ? Model::perturbative2 : Model::perturbative3;
  r.omega_c = quantized_cavity_frequency(params);
  r.g_rp = grp_perturbative(q, c, order);
  r.g_ck = gck_perturbative(q, c, order);
  r.g_0 = direct_coupling(params);
  r.enhancement = r.g_0 != 0.0 ? r.g_rp / r.g_0 : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace cpbom
