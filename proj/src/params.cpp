#include "cpbom/params.hpp"

#include <cmath>
#include <string>

#include "cpbom/errors.hpp"

namespace cpbom {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::NonPositiveParameter,
                std::string(name) + " must be positive and finite, got " + std::to_string(value));
  }
}

// Displacements above this fraction of the gap break the quadratic gate expansion.
constexpr double kMaxXzpOverGap = 1e-2;

}  // namespace

double ValidatedParams::c_g1_at(double x) const noexcept {
  return raw_.c_g10 + geometry_.c_g1_prime * x + 0.5 * geometry_.c_g1_double_prime * x * x;
}

ValidatedParams validate(const CircuitParams& params) {
  require_positive(params.c_cavity, "c_cavity");
  require_positive(params.l_cavity, "l_cavity");
  require_positive(params.c_g10, "c_g10");
  require_positive(params.c_g2, "c_g2");
  require_positive(params.c_j1, "c_j1");
  require_positive(params.c_j2, "c_j2");
  require_positive(params.gap_d0, "gap_d0");
  require_positive(params.x_zp, "x_zp");
  require_positive(params.omega_m, "omega_m");
  if (!std::isfinite(params.v_gate)) {
    throw Error(ErrorCode::NonPositiveParameter, "v_gate must be finite");
  }
  if (params.band_index < 0) {
    throw Error(ErrorCode::NonPositiveParameter, "band_index must be non-negative");
  }
  if (!(params.e_j1 >= 0.0) || !(params.e_j2 >= 0.0) || !std::isfinite(params.e_j1) ||
      !std::isfinite(params.e_j2)) {
    throw Error(ErrorCode::NegativeJosephsonEnergy, "junction energies must be non-negative");
  }
  if (params.x_zp >= kMaxXzpOverGap * params.gap_d0) {
    throw Error(ErrorCode::XzpExceedsGap, "x_zp must be much smaller than gap_d0");
  }

  const double e = kPhys.e_charge;
  const double hbar = kPhys.hbar;

  ValidatedParams v;
  v.raw_ = params;
  v.c_j_ = params.c_j1 + params.c_j2;
  v.e_j_ = params.e_j1 + params.e_j2;
  // Only d^2 enters the spectrum; the sign of d only flips B2, so a swapped
  // junction pair is folded onto d >= 0.
  v.asymmetry_ = v.e_j_ > 0.0 ? std::abs(params.e_j1 - params.e_j2) / v.e_j_ : 0.0;
  if (v.asymmetry_ >= 1.0) {
    throw Error(ErrorCode::NonPositiveParameter,
                "both junctions need a positive Josephson energy when E_J > 0");
  }
  v.e_c_ = e * e / (2.0 * v.c_sigma1());
  v.z0_ = std::sqrt(params.l_cavity / params.c_cavity);
  v.eta_ = std::sqrt(e * e * v.z0_ / (2.0 * hbar));
  v.q_zp_ = std::sqrt(hbar / (2.0 * v.z0_));
  v.phi_zp_ = std::sqrt(hbar * v.z0_ / 2.0);

  const double c_prime = params.c_g10 / params.gap_d0;
  const double c_double_prime = 2.0 * params.c_g10 / (params.gap_d0 * params.gap_d0);
  v.geometry_ = GateGeometry{
      c_prime,
      c_double_prime,
      -c_prime * params.v_gate / (2.0 * e),
      -c_double_prime * params.v_gate / (2.0 * e),
  };
  return v;
}

CircuitParams params_from_energies(double e_c_target, double e_j_target, double asymmetry,
                                   double c_g10, const CircuitParams& rest) {
  require_positive(e_c_target, "e_c_target");
  if (!(e_j_target >= 0.0)) {
    throw Error(ErrorCode::NegativeJosephsonEnergy, "e_j_target must be non-negative");
  }
  if (!(asymmetry >= 0.0 && asymmetry < 1.0)) {
    throw Error(ErrorCode::NonPositiveParameter, "asymmetry must lie in [0, 1)");
  }
  const double c_sigma1 = kPhys.e_charge * kPhys.e_charge / (2.0 * e_c_target);
  if (!(c_g10 < c_sigma1)) {
    throw Error(ErrorCode::InfeasibleCharging,
                "c_g10 exceeds the total island capacitance implied by E_C");
  }
  CircuitParams out = rest;
  out.c_g10 = c_g10;
  const double c_j = c_sigma1 - c_g10;
  out.c_j1 = 0.5 * c_j;
  out.c_j2 = 0.5 * c_j;
  out.e_j1 = 0.5 * e_j_target * (1.0 + asymmetry);
  out.e_j2 = 0.5 * e_j_target * (1.0 - asymmetry);
  return out;
}

CircuitParams params_at_ratio(const ValidatedParams& base, double ej_over_ec, double e_j) {
  require_positive(ej_over_ec, "ej_over_ec");
  require_positive(e_j, "e_j");
  const double e_c = e_j / ej_over_ec;
  const double gate_fraction = base.raw().c_g10 / base.c_sigma1();
  const double c_sigma1 = kPhys.e_charge * kPhys.e_charge / (2.0 * e_c);
  return params_from_energies(e_c, e_j, base.asymmetry(), gate_fraction * c_sigma1, base.raw());
}

}  // namespace cpbom
