#pragma once

#include <array>
#include <vector>

#include "cpbom/params.hpp"

namespace cpbom {

// Charge-basis Hamiltonian of the split Cooper-pair box, in joules.
// States n = n_center - m ... n_center + m.
struct ChargeHamiltonian {
  int n_center = 0;
  int m = 0;
  std::vector<double> diagonal;
  double off_diagonal = 0.0;

  [[nodiscard]] int dim() const noexcept { return 2 * m + 1; }
};

struct CpbSpectrum {
  std::vector<double> band_energies;  // ascending, joules
  int band = 0;
  // Index 0 holds order 1. Units: joules per unit gate charge^order.
  std::array<double, 4> derivatives{};
  std::array<double, 4> derivative_error{};
  int max_order = 0;
  int truncation_m = 0;
  double n_g = 0.0;
  double f = 0.0;

  [[nodiscard]] double derivative(int order) const { return derivatives.at(order - 1); }
  [[nodiscard]] double error(int order) const { return derivative_error.at(order - 1); }
};

inline constexpr int kDefaultTruncation = 10;
inline constexpr int kMaxTruncation = 40;

double effective_ej(const ValidatedParams& params, double f);

// Throws TruncationTooSmall for m < 2.
ChargeHamiltonian build_charge_hamiltonian(const ValidatedParams& params, BiasPoint bias, int m);

// Lowest k_max + 1 energies, converged under doubling of the charge window.
CpbSpectrum band_energies(const ValidatedParams& params, BiasPoint bias, int k_max);

// Hellmann-Feynman slope -8 E_C (<n>_k - n_g). Throws DegenerateBand.
double band_first_derivative_hf(const ValidatedParams& params, BiasPoint bias, int k);

// Orders 1..max_order of E_k with respect to n_g. Order 1 is analytic; higher
// orders are Richardson-extrapolated central differences of the analytic slope.
// Throws NonAnalyticPoint at an exact level crossing (orders >= 2) and
// DerivativeUnresolved when the extrapolation does not settle.
CpbSpectrum band_derivatives(const ValidatedParams& params, BiasPoint bias, int k,
                             int max_order = 4);

}  // namespace cpbom
