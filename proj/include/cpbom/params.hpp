#pragma once

#include <numbers>

namespace cpbom {

// CODATA 2018 exact values.
struct PhysConsts {
  double e_charge;  // C
  double h_planck;  // J s
  double hbar;      // J s
  double phi0;      // Wb
};

inline constexpr PhysConsts kPhys{
    1.602176634e-19,
    6.62607015e-34,
    6.62607015e-34 / (2.0 * std::numbers::pi),
    6.62607015e-34 / (2.0 * 1.602176634e-19),
};

// Raw circuit description in SI units. Energies are in joules, omega_m in rad/s.
struct CircuitParams {
  double c_cavity = 0.0;
  double l_cavity = 0.0;
  double c_g10 = 0.0;
  double c_g2 = 0.0;
  double c_j1 = 0.0;
  double c_j2 = 0.0;
  double e_j1 = 0.0;
  double e_j2 = 0.0;
  double v_gate = 0.0;
  double gap_d0 = 0.0;
  double x_zp = 0.0;
  double omega_m = 0.0;
  int band_index = 0;

  bool operator==(const CircuitParams&) const = default;
};

struct BiasPoint {
  double n_g0 = 0.0;
  double f = 0.0;
};

// Parallel-plate gate: C_g1(x) = C_g10 d0 / (d0 - x), expanded to second order.
struct GateGeometry {
  double c_g1_prime;         // F/m
  double c_g1_double_prime;  // F/m^2
  double dng_dx;             // 1/m
  double d2ng_dx2;           // 1/m^2
};

class ValidatedParams {
 public:
  [[nodiscard]] const CircuitParams& raw() const noexcept { return raw_; }
  [[nodiscard]] double c_j() const noexcept { return c_j_; }
  [[nodiscard]] double c_sigma1() const noexcept { return raw_.c_g10 + c_j_; }
  [[nodiscard]] double e_j() const noexcept { return e_j_; }
  [[nodiscard]] double asymmetry() const noexcept { return asymmetry_; }
  [[nodiscard]] double e_c() const noexcept { return e_c_; }
  [[nodiscard]] double z0() const noexcept { return z0_; }
  [[nodiscard]] double eta() const noexcept { return eta_; }
  [[nodiscard]] double q_zp() const noexcept { return q_zp_; }
  [[nodiscard]] double phi_zp() const noexcept { return phi_zp_; }
  [[nodiscard]] const GateGeometry& geometry() const noexcept { return geometry_; }

  // Gate capacitance at mechanical displacement x, second-order expansion.
  [[nodiscard]] double c_g1_at(double x) const noexcept;

 private:
  friend ValidatedParams validate(const CircuitParams& params);
  ValidatedParams() = default;

  CircuitParams raw_{};
  double c_j_ = 0.0;
  double e_j_ = 0.0;
  double asymmetry_ = 0.0;
  double e_c_ = 0.0;
  double z0_ = 0.0;
  double eta_ = 0.0;
  double q_zp_ = 0.0;
  double phi_zp_ = 0.0;
  GateGeometry geometry_{};
};

// Throws Error{NonPositiveParameter | XzpExceedsGap | NegativeJosephsonEnergy}.
ValidatedParams validate(const CircuitParams& params);

// Back-solves the junction capacitance from a target charging energy. The
// junction capacitance and Josephson energy are split between the two
// junctions (capacitance evenly, energy according to the asymmetry d).
CircuitParams params_from_energies(double e_c_target, double e_j_target, double asymmetry,
                                   double c_g10, const CircuitParams& rest);

// Ratio-ladder variant: fixed Josephson energy, E_C = E_J / ratio, and the gate
// capacitance kept at the same fraction of C_Sigma1 as in `base`.
CircuitParams params_at_ratio(const ValidatedParams& base, double ej_over_ec, double e_j);

}  // namespace cpbom
