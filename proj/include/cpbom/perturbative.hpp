#pragma once

#include "cpbom/circuit.hpp"
#include "cpbom/params.hpp"

namespace cpbom {

// Two-level qubit fields in joules: H_q = -(b1 s_x + b2 s_y + b3 s_z) / 2.
struct QubitFields {
  double b1;
  double b2;
  double b3;
  double b_norm;
};

// Coupling energies (joules) of the quantized tripartite Hamiltonian.
struct CouplingCoefficients {
  double g1;
  double g2;
  double g3;
  double g4;
  double g_m;
  double g_cp;
  double g_cm;
  double eta;
};

// Coefficients of the square-root expansion, in joules^2.
struct GreekCoefficients {
  double alpha;
  double beta;
  double rho;
  double delta;
  double epsilon;
  double lambda;
  double xi1;
  double xi2;
  double xi3;
  double xi4;
  double xi5;
};

enum class XiTerms { included, dropped };

QubitFields qubit_fields(const ValidatedParams& params, BiasPoint bias);
CouplingCoefficients coupling_coefficients(const ValidatedParams& params, BiasPoint bias);
GreekCoefficients greek_coefficients(const QubitFields& fields, const CouplingCoefficients& coeffs);

// Couplings in rad/s. Order 2 keeps the xi terms unless told otherwise; order 3
// has no xi terms. Throw DegeneratePoint when b_norm = 0.
double grp_perturbative(const QubitFields& fields, const CouplingCoefficients& coeffs, int order,
                        XiTerms xi = XiTerms::included);
double gck_perturbative(const QubitFields& fields, const CouplingCoefficients& coeffs, int order,
                        XiTerms xi = XiTerms::included);

// Bare cavity frequency of the quantized model, sqrt((1/C_Sigma_c) / L_c).
double quantized_cavity_frequency(const ValidatedParams& params);

CouplingResult perturbative_couplings(const ValidatedParams& params, BiasPoint bias, int order);

}  // namespace cpbom
