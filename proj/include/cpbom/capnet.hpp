#pragma once

#include <Eigen/Core>

#include "cpbom/params.hpp"

namespace cpbom {

// The four capacitances that define the three-node network (island phi_1,
// bias node phi_2, cavity node phi_c). The bias capacitance is passed separately.
struct NetworkCapacitances {
  double c_cavity;
  double c_j;
  double c_g1;
  double c_g2;
};

NetworkCapacitances network_capacitances(const ValidatedParams& params, double c_g1_at_x);

struct CapMatrix {
  Eigen::Matrix3d entries;
  double c_b;
};

// Entries of the inverse capacitance matrix, in 1/F.
struct InverseShorthands {
  double inv_c_sigma1;
  double inv_c_sigma2;
  double inv_c_sigmac;
  double inv_c_sigma12;
  double inv_c_sigma1c;
  double inv_c_sigma2c;

  // Layout matching CapMatrix: rows/columns (phi_1, phi_2, phi_c).
  [[nodiscard]] Eigen::Matrix3d assemble() const;
};

CapMatrix cap_matrix(const NetworkCapacitances& caps, double c_b);

// Throws SingularNetwork when the determinant vanishes.
InverseShorthands inverse_shorthands_closed_form(const NetworkCapacitances& caps, double c_b);

// Approximations valid when the cavity capacitance dominates the network.
struct CavityDominantForms {
  double inv_c_sigma1;
  double inv_c_sigmac;
  double inv_c_sigma1c;
  double ng_per_volt;  // n_g / V_g
};

struct InfiniteBiasLimits {
  InverseShorthands shorthands;  // inv_c_sigma2, inv_c_sigma12, inv_c_sigma2c are exactly 0
  double ng_per_volt;            // n_g / V_g
  // Finite limit of C_Sigma12 / (C_Sigma1 C_Sigma2c), the direct cavity-bias
  // coupling prefactor, in 1/F. Infinite when the C_Sigma12 numerator vanishes.
  double cavity_bias_prefactor;
  CavityDominantForms cavity_dominant;
};

InfiniteBiasLimits infinite_bias_limits(const NetworkCapacitances& caps);

}  // namespace cpbom
