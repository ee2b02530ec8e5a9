#pragma once

#include <string_view>

#include "cpbom/params.hpp"

namespace cpbom {

enum class Model { circuit, perturbative2, perturbative3, fock_oracle };

std::string_view to_string(Model model) noexcept;
Model model_from_string(std::string_view name);  // throws ConfigInvalid

// Island capacitance seen from the gate, with its displacement derivatives.
struct EffectiveCapacitance {
  double value;     // F
  double d1;        // F/m
  double d2;        // F/m^2
  double value_err;
  double d1_err;
  double d2_err;
  int band;
};

// All rates in rad/s. Entries a model cannot produce are NaN.
struct CouplingResult {
  double omega_c;
  double g_rp;
  double g_0;
  double g_ck;
  double enhancement;  // g_rp / g_0
  Model model_tag;
};

// d1 and d2 need band derivatives up to orders 3 and 4; pass max_x_order = 1
// to skip d2 (and the fourth band derivative).
EffectiveCapacitance effective_capacitance(const ValidatedParams& params, BiasPoint bias,
                                           int max_x_order = 2);

// C_eff with the gate evaluated at displacement x: C_g1(x) from the quadratic
// plate expansion and n_g(x) = n_g0 + n_g'(x) x + n_g''(x) x^2 / 2.
double effective_capacitance_at(const ValidatedParams& params, BiasPoint bias, double x);

// Total capacitance of the cavity node for a given island capacitance.
// Throws SeriesDivergence when C_eff cancels C_g2 or the total is not positive.
double loaded_capacitance(const ValidatedParams& params, double c_eff);

double cavity_frequency(const ValidatedParams& params, BiasPoint bias, double x = 0.0);

double direct_coupling(const ValidatedParams& params);

CouplingResult radiation_pressure_coupling(const ValidatedParams& params, BiasPoint bias);
CouplingResult cross_kerr_coupling(const ValidatedParams& params, BiasPoint bias);

struct CkHamiltonian {
  double omega_c;
  double omega_m;
  double g_ck;
  double g_rp;
  double kappa_low;   // rad/s
  double kappa_high;  // rad/s
  double g_ck_over_kappa_low;
  double g_ck_over_kappa_high;
};

inline constexpr double kDefaultPureCkRatio = 1e-3;

// Parameters of the pure cross-Kerr Hamiltonian. Throws NotInPureCkRegime when
// |g_rp| >= max_rp_over_ck * |g_ck|.
CkHamiltonian effective_ck_hamiltonian(const ValidatedParams& params, BiasPoint bias,
                                       double max_rp_over_ck = kDefaultPureCkRatio,
                                       double kappa_low_hz = 1e6, double kappa_high_hz = 1e7);

}  // namespace cpbom
