#include "cpbom/circuit.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cpbom/errors.hpp"
#include "cpbom/spectrum.hpp"

namespace cpbom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSeriesTolerance = 1e-9;

struct Loaded {
  double c_tot;
  double omega;
};

Loaded load(const ValidatedParams& params, double c_eff) {
  const double c_tot = loaded_capacitance(params, c_eff);
  return {c_tot, 1.0 / std::sqrt(params.raw().l_cavity * c_tot)};
}

// Closed-form evaluation shared by the g_rp and g_CK entry points.
CouplingResult evaluate(const ValidatedParams& params, BiasPoint bias, bool with_cross_kerr) {
  const EffectiveCapacitance ce = effective_capacitance(params, bias, with_cross_kerr ? 2 : 1);
  const auto [c_tot, omega] = load(params, ce.value);
  const double cg2 = params.raw().c_g2;
  const double cc = params.raw().c_cavity;
  const double x_zp = params.raw().x_zp;
  const double series = cg2 + ce.value;

  const double domega_dx = -0.5 * cg2 * cg2 / (series * series) * omega / c_tot * ce.d1;

  CouplingResult r{};
  r.model_tag = Model::circuit;
  r.omega_c = omega;
  r.g_rp = -domega_dx * x_zp;
  r.g_0 = direct_coupling(params);
  r.enhancement = r.g_0 != 0.0 ? r.g_rp / r.g_0 : kNaN;
  r.g_ck = kNaN;
  if (with_cross_kerr) {
    const double d = cc * cg2 + (cc + cg2) * ce.value;
    const double d2omega_dx2 =
        0.25 * omega * cg2 * cg2 * ce.d1 * ce.d1 *
            (cg2 * (4.0 * cc + 3.0 * cg2) + 4.0 * (cc + cg2) * ce.value) /
            (series * series * d * d) -
        0.5 * omega * cg2 * cg2 * ce.d2 / (series * d);
    r.g_ck = d2omega_dx2 * x_zp * x_zp;
  }
  return r;
}

}  // namespace

std::string_view to_string(Model model) noexcept {
  switch (model) {
    case Model::circuit: return "circuit";
    case Model::perturbative2: return "perturbative2";
    case Model::perturbative3: return "perturbative3";
    case Model::fock_oracle: return "fock_oracle";
  }
  return "unknown";
}

Model model_from_string(std::string_view name) {
  for (Model m : {Model::circuit, Model::perturbative2, Model::perturbative3, Model::fock_oracle}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown model '" + std::string(name) + "'");
}

EffectiveCapacitance effective_capacitance(const ValidatedParams& params, BiasPoint bias,
                                           int max_x_order) {
  const int band = params.raw().band_index;
  const CpbSpectrum spec = band_derivatives(params, bias, band, max_x_order >= 2 ? 4 : 3);

  const double e = kPhys.e_charge;
  const double vg = params.raw().v_gate;
  const double cg1 = params.raw().c_g10;
  const double cj = params.c_j();
  const double sum = cg1 + cj;
  const double cp = params.geometry().c_g1_prime;
  const double cpp = params.geometry().c_g1_double_prime;

  const double e2 = spec.derivative(2);
  const double e3 = spec.derivative(3);
  const double quantum_scale = cg1 * cg1 / (4.0 * e * e);

  EffectiveCapacitance out{};
  out.band = band;
  out.value = cg1 * cj / sum - quantum_scale * e2;
  out.value_err = quantum_scale * spec.error(2);

  const double rp2 = cg1 * cp / (2.0 * e * e);
  const double rp3 = cg1 * cg1 * cp * vg / (8.0 * e * e * e);
  out.d1 = cj * cj * cp / (sum * sum) - rp2 * e2 + rp3 * e3;
  out.d1_err = std::abs(rp2) * spec.error(2) + std::abs(rp3) * spec.error(3);

  if (max_x_order >= 2) {
    const double e4 = spec.derivative(4);
    const double ng_slope = vg * cp / (2.0 * e);
    const double geometric = cj * cj * cpp / (sum * sum) - 2.0 * cj * cj * cp * cp / (sum * sum * sum);
    const double k2 = 2.0 * cp * cp + 2.0 * cg1 * cpp;
    const double k3 = 2.0 * cg1 * cp * cp * vg / e + cg1 * cg1 * cpp * vg / (2.0 * e);
    const double k4 = cg1 * cg1 * ng_slope * ng_slope;
    const double inv4e2 = 1.0 / (4.0 * e * e);
    out.d2 = geometric - inv4e2 * (k2 * e2 - k3 * e3 + k4 * e4);
    out.d2_err = inv4e2 * (std::abs(k2) * spec.error(2) + std::abs(k3) * spec.error(3) +
                           std::abs(k4) * spec.error(4));
  } else {
    out.d2 = kNaN;
    out.d2_err = kNaN;
  }
  return out;
}

double effective_capacitance_at(const ValidatedParams& params, BiasPoint bias, double x) {
  const GateGeometry& g = params.geometry();
  const double cg1 = params.c_g1_at(x);
  const double n_g = bias.n_g0 + g.dng_dx * x + 0.5 * g.d2ng_dx2 * x * x;
  const CpbSpectrum spec = band_derivatives(params, {n_g, bias.f}, params.raw().band_index, 2);
  const double e = kPhys.e_charge;
  const double cj = params.c_j();
  return cg1 * cj / (cg1 + cj) - cg1 * cg1 / (4.0 * e * e) * spec.derivative(2);
}

double loaded_capacitance(const ValidatedParams& params, double c_eff) {
  const double cg2 = params.raw().c_g2;
  const double series_sum = cg2 + c_eff;
  if (std::abs(series_sum) <= kSeriesTolerance * cg2) {
    throw Error(ErrorCode::SeriesDivergence, "C_eff cancels C_g2 in the series branch");
  }
  const double c_tot = params.raw().c_cavity + cg2 * c_eff / series_sum;
  if (!(c_tot > 0.0) || !std::isfinite(c_tot)) {
    throw Error(ErrorCode::SeriesDivergence, "loaded cavity capacitance is not positive");
  }
  return c_tot;
}

double cavity_frequency(const ValidatedParams& params, BiasPoint bias, double x) {
  return load(params, effective_capacitance_at(params, bias, x)).omega;
}

double direct_coupling(const ValidatedParams& params) {
  const double cg1 = params.raw().c_g10;
  const double cg2 = params.raw().c_g2;
  const double c_d = params.raw().c_cavity + cg1 * cg2 / (cg1 + cg2);
  const double omega_d = 1.0 / std::sqrt(params.raw().l_cavity * c_d);
  const double ratio = cg2 / (cg1 + cg2);
  return -0.5 * ratio * ratio * omega_d / c_d * params.geometry().c_g1_prime * params.raw().x_zp;
}

CouplingResult radiation_pressure_coupling(const ValidatedParams& params, BiasPoint bias) {
  return evaluate(params, bias, false);
}

CouplingResult cross_kerr_coupling(const ValidatedParams& params, BiasPoint bias) {
  return evaluate(params, bias, true);
}

CkHamiltonian effective_ck_hamiltonian(const ValidatedParams& params, BiasPoint bias,
                                       double max_rp_over_ck, double kappa_low_hz,
                                       double kappa_high_hz) {
  const CouplingResult r = cross_kerr_coupling(params, bias);
  if (!(std::abs(r.g_rp) < max_rp_over_ck * std::abs(r.g_ck))) {
    throw Error(ErrorCode::NotInPureCkRegime,
                "|g_rp| / |g_ck| = " + std::to_string(std::abs(r.g_rp / r.g_ck)) +
                    " exceeds " + std::to_string(max_rp_over_ck));
  }
  const double two_pi = 2.0 * std::numbers::pi;
  CkHamiltonian h{};
  h.omega_c = r.omega_c;
  h.omega_m = params.raw().omega_m;
  h.g_ck = r.g_ck;
  h.g_rp = r.g_rp;
  h.kappa_low = two_pi * kappa_low_hz;
  h.kappa_high = two_pi * kappa_high_hz;
  h.g_ck_over_kappa_low = r.g_ck / h.kappa_low;
  h.g_ck_over_kappa_high = r.g_ck / h.kappa_high;
  return h;
}

}  // namespace cpbom
