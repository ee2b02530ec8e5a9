#include "cpbom/capnet.hpp"

#include <cmath>
#include <limits>

#include "cpbom/errors.hpp"

namespace cpbom {

NetworkCapacitances network_capacitances(const ValidatedParams& params, double c_g1_at_x) {
  return {params.raw().c_cavity, params.c_j(), c_g1_at_x, params.raw().c_g2};
}

Eigen::Matrix3d InverseShorthands::assemble() const {
  Eigen::Matrix3d m;
  m << inv_c_sigma1, inv_c_sigma12, inv_c_sigma1c,
       inv_c_sigma12, inv_c_sigma2, inv_c_sigma2c,
       inv_c_sigma1c, inv_c_sigma2c, inv_c_sigmac;
  return m;
}

CapMatrix cap_matrix(const NetworkCapacitances& caps, double c_b) {
  const auto& [cc, cj, cg1, cg2] = caps;
  CapMatrix out{Eigen::Matrix3d::Zero(), c_b};
  out.entries << cj + cg1, -cg1, cj / 2.0,
                 -cg1, cg1 + cg2 + c_b, -cg2 / 2.0,
                 cj / 2.0, -cg2 / 2.0, cc + cj / 4.0 + cg2 / 4.0;
  return out;
}

InverseShorthands inverse_shorthands_closed_form(const NetworkCapacitances& caps, double c_b) {
  const auto& [cc, cj, cg1, cg2] = caps;
  // Four times the determinant of the capacitance matrix.
  const double den = c_b * cg1 * (4.0 * cc + cg2) + c_b * cj * (4.0 * cc + cg1 + cg2) +
                     4.0 * (cc * cg1 * cg2 + cj * cg1 * cg2 + cc * cj * (cg1 + cg2));
  if (!(std::abs(den) > std::numeric_limits<double>::min()) || !std::isfinite(den)) {
    throw Error(ErrorCode::SingularNetwork, "capacitance matrix is singular");
  }
  InverseShorthands s{};
  s.inv_c_sigma1 =
      (cg1 * cg2 + 4.0 * cc * (cg1 + cg2) + cj * (cg1 + cg2) + c_b * (4.0 * cc + cg2 + cj)) / den;
  s.inv_c_sigma2 = (cg1 * cg2 + 4.0 * cc * (cg1 + cj) + cj * (cg1 + cg2)) / den;
  s.inv_c_sigmac = 4.0 * (cg1 * (c_b + cg2) + cj * (c_b + cg1 + cg2)) / den;
  s.inv_c_sigma12 = (4.0 * cc * cg1 + cg1 * cg2 + cj * (cg1 - cg2)) / den;
  s.inv_c_sigma1c = (2.0 * cg1 * cg2 - 2.0 * cj * (c_b + cg1 + cg2)) / den;
  s.inv_c_sigma2c = (2.0 * cg1 * (cg2 - cj) + 2.0 * cg2 * cj) / den;
  return s;
}

InfiniteBiasLimits infinite_bias_limits(const NetworkCapacitances& caps) {
  const auto& [cc, cj, cg1, cg2] = caps;
  const double e = kPhys.e_charge;
  // Coefficient of C_B in the determinant expression above.
  const double den = cg1 * (4.0 * cc + cg2) + cj * (4.0 * cc + cg1 + cg2);
  if (!(std::abs(den) > std::numeric_limits<double>::min())) {
    throw Error(ErrorCode::SingularNetwork, "capacitance matrix is singular as C_B -> inf");
  }

  InfiniteBiasLimits out{};
  out.shorthands.inv_c_sigma1 = (4.0 * cc + cg2 + cj) / den;
  out.shorthands.inv_c_sigmac = 4.0 * (cg1 + cj) / den;
  out.shorthands.inv_c_sigma1c = -2.0 * cj / den;
  out.ng_per_volt = -(cg1 - cg2 * cj / (4.0 * cc + cg2 + cj)) / (2.0 * e);

  // Ratio of the C_B-independent numerators of 1/C_Sigma2c and 1/C_Sigma12.
  const double num_2c = 2.0 * cg1 * (cg2 - cj) + 2.0 * cg2 * cj;
  const double num_12 = 4.0 * cc * cg1 + cg1 * cg2 + cj * (cg1 - cg2);
  out.cavity_bias_prefactor = num_12 != 0.0
                                  ? out.shorthands.inv_c_sigma1 * num_2c / num_12
                                  : std::numeric_limits<double>::infinity();

  out.cavity_dominant.inv_c_sigma1 = 1.0 / (cg1 + cj);
  out.cavity_dominant.inv_c_sigmac = 1.0 / cc;
  out.cavity_dominant.inv_c_sigma1c = -cj / (2.0 * cc * (cg1 + cj));
  out.cavity_dominant.ng_per_volt = -cg1 / (2.0 * e);
  return out;
}

}  // namespace cpbom
