#include "cpbom/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cpbom/errors.hpp"

namespace cpbom {

namespace {

// Energies are handled in units of h * 1 GHz inside this file.
constexpr double kEnergyUnit = kPhys.h_planck * 1e9;

// Thresholds below are in units of E_C.
constexpr double kDegenerateGap = 1e-8;
constexpr double kConvergenceTol = 1e-10;

// The slope of band k is analytic within a disc whose radius in n_g is close
// to the local gap divided by the charging slope 8 E_C. The coarsest Richardson
// step is a fixed fraction of that radius: small enough for the h^6 residual
// to vanish, large enough that rounding in the slope does not dominate the
// fourth-order stencil.
constexpr double kStepFraction = 0.03;
constexpr double kMaxAnalyticRadius = 0.5;
constexpr double kRelativeTolerance = 1e-4;
constexpr double kNearZeroFraction = 1e-3;

struct ScaledEnergies {
  double e_c;
  double e_j_eff;
};

ScaledEnergies scaled(const ValidatedParams& params, double f) {
  return {params.e_c() / kEnergyUnit, effective_ej(params, f) / kEnergyUnit};
}

int window_center(double n_g) { return static_cast<int>(std::floor(n_g + 0.5)); }

struct Solution {
  Eigen::VectorXd energies;
  double mean_charge = 0.0;  // <n> of the requested band, if computed
};

Solution solve(const ScaledEnergies& s, double n_g, int m, int band, bool with_charge) {
  const int center = window_center(n_g);
  const int dim = 2 * m + 1;
  Eigen::VectorXd diag(dim);
  for (int i = 0; i < dim; ++i) {
    const double offset = static_cast<double>(center - m + i) - n_g;
    diag[i] = 4.0 * s.e_c * offset * offset;
  }
  const Eigen::VectorXd sub = Eigen::VectorXd::Constant(dim - 1, -0.5 * s.e_j_eff);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub,
                                with_charge ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "tridiagonal eigensolver did not converge");
  }
  Solution out;
  out.energies = solver.eigenvalues();
  if (with_charge) {
    const Eigen::VectorXd v = solver.eigenvectors().col(band);
    double mean = 0.0;
    for (int i = 0; i < dim; ++i) mean += static_cast<double>(center - m + i) * v[i] * v[i];
    out.mean_charge = mean;
  }
  return out;
}

// Smallest window whose lowest k_max + 1 levels survive a doubling of the window.
int converged_truncation(const ScaledEnergies& s, double n_g, int k_max) {
  int m = std::max(kDefaultTruncation, k_max + 1);
  while (2 * m <= kMaxTruncation) {
    const Solution small = solve(s, n_g, m, 0, false);
    const Solution large = solve(s, n_g, 2 * m, 0, false);
    double change = 0.0;
    for (int k = 0; k <= k_max; ++k) {
      change = std::max(change, std::abs(small.energies[k] - large.energies[k]));
    }
    if (change < kConvergenceTol * s.e_c) return m;
    m *= 2;
  }
  throw Error(ErrorCode::ConvergenceFailure,
              "band energies not converged within the charge-window cap");
}

double gap_to_neighbours(const Eigen::VectorXd& energies, int k) {
  double gap = energies[k + 1] - energies[k];
  if (k > 0) gap = std::min(gap, energies[k] - energies[k - 1]);
  return gap;
}

double hf_slope(const ScaledEnergies& s, double n_g, int m, int k) {
  const Solution sol = solve(s, n_g, m, k, true);
  return -8.0 * s.e_c * (sol.mean_charge - n_g);
}

// Central-difference estimates of the (order-1)-th derivative of the slope.
struct SlopeSamples {
  double centre, plus1, minus1, plus2, minus2;
};

// Sum of absolute stencil weights, used to propagate slope rounding noise.
double stencil_weight(int order) {
  switch (order) {
    case 2: return 1.0;
    case 3: return 4.0;
    default: return 3.0;
  }
}

double stencil(int order, const SlopeSamples& y, double h) {
  switch (order) {
    case 2: return (y.plus1 - y.minus1) / (2.0 * h);
    case 3: return (y.plus1 - 2.0 * y.centre + y.minus1) / (h * h);
    default: return (y.plus2 - 2.0 * y.plus1 + 2.0 * y.minus1 - y.minus2) / (2.0 * h * h * h);
  }
}

}  // namespace

double effective_ej(const ValidatedParams& params, double f) {
  const double c = std::cos(std::numbers::pi * f);
  const double s = std::sin(std::numbers::pi * f);
  const double d = params.asymmetry();
  return params.e_j() * std::sqrt(c * c + d * d * s * s);
}

ChargeHamiltonian build_charge_hamiltonian(const ValidatedParams& params, BiasPoint bias,
                                           int m) {
  if (m < 2) {
    throw Error(ErrorCode::TruncationTooSmall, "charge window half-width must be >= 2");
  }
  ChargeHamiltonian h;
  h.m = m;
  h.n_center = window_center(bias.n_g0);
  h.diagonal.resize(static_cast<std::size_t>(h.dim()));
  for (int i = 0; i < h.dim(); ++i) {
    const double offset = static_cast<double>(h.n_center - m + i) - bias.n_g0;
    h.diagonal[static_cast<std::size_t>(i)] = 4.0 * params.e_c() * offset * offset;
  }
  h.off_diagonal = -0.5 * effective_ej(params, bias.f);
  return h;
}

CpbSpectrum band_energies(const ValidatedParams& params, BiasPoint bias, int k_max) {
  if (k_max < 1) throw Error(ErrorCode::TruncationTooSmall, "k_max must be >= 1");
  const ScaledEnergies s = scaled(params, bias.f);
  const int m = converged_truncation(s, bias.n_g0, k_max);
  const Solution sol = solve(s, bias.n_g0, m, 0, false);

  CpbSpectrum out;
  out.n_g = bias.n_g0;
  out.f = bias.f;
  out.truncation_m = m;
  out.band_energies.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) out.band_energies.push_back(sol.energies[k] * kEnergyUnit);
  return out;
}

double band_first_derivative_hf(const ValidatedParams& params, BiasPoint bias, int k) {
  const ScaledEnergies s = scaled(params, bias.f);
  const int m = converged_truncation(s, bias.n_g0, k + 1);
  const Solution sol = solve(s, bias.n_g0, m, k, true);
  if (gap_to_neighbours(sol.energies, k) < kDegenerateGap * s.e_c) {
    throw Error(ErrorCode::DegenerateBand, "band " + std::to_string(k) + " is degenerate");
  }
  return -8.0 * s.e_c * (sol.mean_charge - bias.n_g0) * kEnergyUnit;
}

CpbSpectrum band_derivatives(const ValidatedParams& params, BiasPoint bias, int k,
                             int max_order) {
  if (max_order < 1 || max_order > 4) {
    throw Error(ErrorCode::ConfigInvalid, "derivative order must lie in 1..4");
  }
  if (k < 0) throw Error(ErrorCode::ConfigInvalid, "band index must be non-negative");

  const ScaledEnergies s = scaled(params, bias.f);
  const double x = bias.n_g0;
  const int m = converged_truncation(s, x, k + 1);
  const Solution centre = solve(s, x, m, k, true);
  const double gap = gap_to_neighbours(centre.energies, k);

  CpbSpectrum out;
  out.n_g = x;
  out.f = bias.f;
  out.band = k;
  out.max_order = max_order;
  out.truncation_m = m;
  for (int j = 0; j <= k + 1; ++j) out.band_energies.push_back(centre.energies[j] * kEnergyUnit);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Rounding in <n> is a few ulps; the slope scales it by 8 E_C.
  const double slope_noise = 16.0 * eps * 8.0 * s.e_c;

  if (gap < kDegenerateGap * s.e_c) {
    if (max_order >= 2) {
      throw Error(ErrorCode::NonAnalyticPoint,
                  "exact level crossing at n_g = " + std::to_string(x));
    }
    // Symmetric difference of the energy: the mean of the two one-sided slopes.
    const double step = 1e-6;
    const double up = solve(s, x + step, m, 0, false).energies[k];
    const double down = solve(s, x - step, m, 0, false).energies[k];
    out.derivatives[0] = (up - down) / (2.0 * step) * kEnergyUnit;
    out.derivative_error[0] = 8.0 * s.e_c * step * kEnergyUnit;
    return out;
  }

  out.derivatives[0] = -8.0 * s.e_c * (centre.mean_charge - x) * kEnergyUnit;
  out.derivative_error[0] = slope_noise * kEnergyUnit;
  if (max_order == 1) return out;

  const double radius = std::min(gap / (8.0 * s.e_c), kMaxAnalyticRadius);
  const double h0 = kStepFraction * radius;
  const double y0 = -8.0 * s.e_c * (centre.mean_charge - x);

  constexpr int kLevels = 3;
  std::array<SlopeSamples, kLevels> samples{};
  for (int level = 0; level < kLevels; ++level) {
    const double h = h0 / static_cast<double>(1 << level);
    SlopeSamples& y = samples[static_cast<std::size_t>(level)];
    y.centre = y0;
    y.plus1 = hf_slope(s, x + h, m, k);
    y.minus1 = hf_slope(s, x - h, m, k);
    if (max_order >= 4) {
      y.plus2 = hf_slope(s, x + 2.0 * h, m, k);
      y.minus2 = hf_slope(s, x - 2.0 * h, m, k);
    }
  }

  for (int order = 2; order <= max_order; ++order) {
    double table[kLevels][kLevels] = {};
    for (int level = 0; level < kLevels; ++level) {
      const double h = h0 / static_cast<double>(1 << level);
      table[level][0] = stencil(order, samples[static_cast<std::size_t>(level)], h);
      double factor = 1.0;
      for (int j = 1; j <= level; ++j) {
        factor *= 4.0;
        table[level][j] =
            table[level][j - 1] + (table[level][j - 1] - table[level - 1][j - 1]) / (factor - 1.0);
      }
    }
    const double value = table[kLevels - 1][kLevels - 1];
    const double smallest_step = h0 / static_cast<double>(1 << (kLevels - 1));
    const double noise =
        stencil_weight(order) * slope_noise / std::pow(smallest_step, order - 1);
    const double err =
        std::max(std::abs(value - table[kLevels - 2][kLevels - 2]), noise);
    // A value is near zero when it is within its rounding noise or small next
    // to the natural size 8 E_C / radius^(order - 2) of this derivative (odd
    // orders vanish at symmetric points, all higher orders on pure parabolas).
    const double natural = 8.0 * s.e_c / std::pow(radius, order - 2);
    const bool near_zero = std::abs(value) <= std::max(10.0 * noise, kNearZeroFraction * natural);
    if (err > kRelativeTolerance * std::abs(value) && !near_zero) {
      throw Error(ErrorCode::DerivativeUnresolved,
                  "order " + std::to_string(order) + " derivative did not converge at n_g = " +
                      std::to_string(x));
    }
    out.derivatives[static_cast<std::size_t>(order - 1)] = value * kEnergyUnit;
    out.derivative_error[static_cast<std::size_t>(order - 1)] = err * kEnergyUnit;
  }
  return out;
}

}  // namespace cpbom
