#pragma once

#include <Eigen/Core>
#include <array>

#include "cpbom/params.hpp"
#include "cpbom/perturbative.hpp"

namespace cpbom {

struct FockConfig {
  int n_cavity = 8;
  int n_mech = 8;
  bool include_direct_cm = false;
  bool include_h1_h2 = false;
  // Cancels the static force that the qubit ground state exerts on the
  // mechanics, keeping the mechanical equilibrium at the bias point n_g0.
  bool pin_mechanics = true;

  bool operator==(const FockConfig&) const = default;
};

inline constexpr int kMinFockCutoff = 4;
inline constexpr int kMaxFockCutoff = 32;
inline constexpr int kMaxFockDimension = 8192;

// Everything the truncated Hamiltonian needs; tests may build it by hand.
struct TripartiteModel {
  QubitFields fields;
  CouplingCoefficients coeffs;
  double omega_c;  // rad/s
  double omega_m;  // rad/s
  // Direct cavity-mechanics term: cm_energy * (n_g0 + cm_slope x_m) p_c.
  double cm_energy;
  double n_g0;
  double cm_slope;
  // Mechanics drive and squeeze constants h1 (b + b^dag) + h2 (b^2 + b^dag^2).
  double h1;
  double h2;
};

TripartiteModel make_tripartite_model(const ValidatedParams& params, BiasPoint bias);

// Throws ConfigInvalid for cutoffs outside [4, 32] and DimensionCap above 8192.
void check_fock_config(const FockConfig& cfg);

// Basis ordering |qubit> (x) |n_a> (x) |n_b>, qubit index 0 = |1>, 1 = |0>.
// Energies are offset so the bare qubit ground level sits at zero.
Eigen::MatrixXcd build_tripartite_hamiltonian(const TripartiteModel& model, const FockConfig& cfg);
Eigen::MatrixXcd build_tripartite_hamiltonian(const ValidatedParams& params, BiasPoint bias,
                                              const FockConfig& cfg);

struct DressedLevel {
  double energy;  // J
  double overlap;
  Eigen::VectorXcd state;
};

// Index = 2 * n_a + n_b for n_a, n_b in {0, 1}.
struct DressedLevels {
  std::array<DressedLevel, 4> levels;

  [[nodiscard]] const DressedLevel& at(int n_a, int n_b) const { return levels.at(2 * n_a + n_b); }
  [[nodiscard]] double min_overlap() const;
};

inline constexpr double kMinLabelOverlap = 0.5;

// Throws LabelingAmbiguous when a level's best overlap is below 0.5 or two
// labels claim the same eigenvector.
DressedLevels dressed_levels(const Eigen::MatrixXcd& hamiltonian, const TripartiteModel& model,
                             const FockConfig& cfg);

double extract_gck(const DressedLevels& levels);
double extract_grp(const DressedLevels& levels, const TripartiteModel& model,
                   const FockConfig& cfg);

struct FockCouplings {
  double g_ck;  // rad/s
  double g_rp;  // rad/s
  double min_overlap;
};

FockCouplings fock_couplings(const TripartiteModel& model, const FockConfig& cfg);

struct FockReport {
  FockCouplings base;
  FockCouplings refined;  // both cutoffs doubled (capped at 32)
  double drift_ck;        // relative change base -> refined
  double drift_rp;
};

inline constexpr double kMaxCutoffDrift = 1e-2;

FockReport fock_oracle(const ValidatedParams& params, BiasPoint bias, const FockConfig& cfg);

}  // namespace cpbom
