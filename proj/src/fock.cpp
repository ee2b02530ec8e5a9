#include "cpbom/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "cpbom/capnet.hpp"
#include "cpbom/errors.hpp"

namespace cpbom {

namespace {

using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

Mat annihilation(int n) {
  Mat a = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

struct ModeOperators {
  Mat x_c, p_c, x_m, n_a, n_b, b_sq, identity;
};

ModeOperators mode_operators(int n_cavity, int n_mech) {
  const Mat a = annihilation(n_cavity);
  const Mat b = annihilation(n_mech);
  const Mat ic = Mat::Identity(n_cavity, n_cavity);
  const Mat im = Mat::Identity(n_mech, n_mech);
  const cd i{0.0, 1.0};
  ModeOperators ops;
  ops.x_c = Eigen::kroneckerProduct(Mat(a + a.adjoint()), im);
  ops.p_c = Eigen::kroneckerProduct(Mat(-i * (a - a.adjoint())), im);
  ops.x_m = Eigen::kroneckerProduct(ic, Mat(b + b.adjoint()));
  ops.n_a = Eigen::kroneckerProduct(Mat(a.adjoint() * a), im);
  ops.n_b = Eigen::kroneckerProduct(ic, Mat(b.adjoint() * b));
  ops.b_sq = Eigen::kroneckerProduct(ic, Mat(b * b + b.adjoint() * b.adjoint()));
  ops.identity = Mat::Identity(n_cavity * n_mech, n_cavity * n_mech);
  return ops;
}

// Bare qubit ground state of -(b1 s_x + b2 s_y + b3 s_z)/2 in the basis (|1>, |0>).
Eigen::Vector2cd qubit_ground(const QubitFields& q) {
  Eigen::Matrix2cd h;
  const cd i{0.0, 1.0};
  h << -0.5 * q.b3, -0.5 * (q.b1 - i * q.b2),
       -0.5 * (q.b1 + i * q.b2), 0.5 * q.b3;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(h);
  return solver.eigenvectors().col(0);
}

double relative_change(double from, double to) {
  return from != 0.0 ? std::abs(to - from) / std::abs(from) : std::abs(to - from);
}

}  // namespace

TripartiteModel make_tripartite_model(const ValidatedParams& params, BiasPoint bias) {
  const double e = kPhys.e_charge;
  const double hbar = kPhys.hbar;
  const InfiniteBiasLimits limits =
      infinite_bias_limits(network_capacitances(params, params.raw().c_g10));

  TripartiteModel m{};
  m.fields = qubit_fields(params, bias);
  m.coeffs = coupling_coefficients(params, bias);
  m.omega_c = quantized_cavity_frequency(params);
  m.omega_m = params.raw().omega_m;
  m.cm_energy = 2.0 * e * limits.cavity_bias_prefactor * params.q_zp();
  m.n_g0 = bias.n_g0;
  m.cm_slope = params.geometry().dng_dx * params.raw().x_zp;
  // The electrostatic mechanics terms share one prefactor whose b^dag b part
  // is identified with hbar omega_m; h1 and h2 follow from the same prefactor.
  if (m.cm_slope != 0.0) {
    m.h1 = hbar * m.omega_m * bias.n_g0 / m.cm_slope;
    m.h2 = 0.5 * hbar * m.omega_m;
  }
  return m;
}

void check_fock_config(const FockConfig& cfg) {
  for (int n : {cfg.n_cavity, cfg.n_mech}) {
    if (n < kMinFockCutoff || n > kMaxFockCutoff) {
      throw Error(ErrorCode::ConfigInvalid, "Fock cutoffs must lie in [4, 32], got " +
                                                std::to_string(n));
    }
  }
  if (2 * cfg.n_cavity * cfg.n_mech > kMaxFockDimension) {
    throw Error(ErrorCode::DimensionCap, "tripartite dimension exceeds 8192");
  }
}

Mat build_tripartite_hamiltonian(const TripartiteModel& model, const FockConfig& cfg) {
  check_fock_config(cfg);
  const ModeOperators ops = mode_operators(cfg.n_cavity, cfg.n_mech);
  const QubitFields& q = model.fields;
  const CouplingCoefficients& c = model.coeffs;
  const double hbar = kPhys.hbar;

  const Mat x_c2 = ops.x_c * ops.x_c;
  const Mat field1 = q.b1 * ops.identity - 2.0 * c.g3 * ops.x_c - 2.0 * c.g2 * x_c2;
  const Mat field2 = q.b2 * ops.identity - 2.0 * c.g1 * ops.x_c - 2.0 * c.g4 * x_c2;
  const Mat field3 = q.b3 * ops.identity + 2.0 * c.g_m * ops.x_m + 2.0 * c.g_cp * ops.p_c -
                     2.0 * c.g_cm * ops.p_c * ops.x_m;

  // Offsetting by the bare qubit ground energy -b_norm/2 keeps the low levels near zero.
  Mat modes = hbar * model.omega_c * ops.n_a + hbar * model.omega_m * ops.n_b +
              0.5 * q.b_norm * ops.identity;
  if (cfg.pin_mechanics && q.b_norm > 0.0) {
    modes += c.g_m * (q.b3 / q.b_norm) * ops.x_m;
  }
  if (cfg.include_direct_cm) {
    modes += model.cm_energy * (model.n_g0 * ops.identity + model.cm_slope * ops.x_m) * ops.p_c;
  }
  if (cfg.include_h1_h2) {
    modes += model.h1 * ops.x_m + model.h2 * ops.b_sq;
  }

  const cd i{0.0, 1.0};
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -i, i, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;

  Mat h = Eigen::kroneckerProduct(Eigen::Matrix2cd::Identity(), modes);
  h -= 0.5 * Mat(Eigen::kroneckerProduct(sx, field1));
  h -= 0.5 * Mat(Eigen::kroneckerProduct(sy, field2));
  h -= 0.5 * Mat(Eigen::kroneckerProduct(sz, field3));
  return h;
}

Mat build_tripartite_hamiltonian(const ValidatedParams& params, BiasPoint bias,
                                 const FockConfig& cfg) {
  return build_tripartite_hamiltonian(make_tripartite_model(params, bias), cfg);
}

double DressedLevels::min_overlap() const {
  double m = 1.0;
  for (const auto& level : levels) m = std::min(m, level.overlap);
  return m;
}

DressedLevels dressed_levels(const Mat& hamiltonian, const TripartiteModel& model,
                             const FockConfig& cfg) {
  check_fock_config(cfg);
  const int modes = cfg.n_cavity * cfg.n_mech;
  if (hamiltonian.rows() != 2 * modes || hamiltonian.cols() != 2 * modes) {
    throw Error(ErrorCode::ConfigInvalid, "Hamiltonian size does not match the Fock cutoffs");
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "dense Hermitian eigensolver failed");
  }
  const Eigen::Vector2cd ground = qubit_ground(model.fields);
  const Mat& vectors = solver.eigenvectors();

  DressedLevels out;
  std::array<Eigen::Index, 4> chosen{};
  for (int n_a = 0; n_a <= 1; ++n_a) {
    for (int n_b = 0; n_b <= 1; ++n_b) {
      const int mode_index = n_a * cfg.n_mech + n_b;
      // <ground, n_a, n_b | v> for every eigenvector v.
      const Eigen::VectorXcd amplitude =
          std::conj(ground[0]) * vectors.row(mode_index).transpose() +
          std::conj(ground[1]) * vectors.row(modes + mode_index).transpose();
      Eigen::Index best = 0;
      const double overlap = amplitude.cwiseAbs2().maxCoeff(&best);
      if (overlap < kMinLabelOverlap) {
        throw Error(ErrorCode::LabelingAmbiguous,
                    "level (" + std::to_string(n_a) + "," + std::to_string(n_b) +
                        ") has overlap " + std::to_string(overlap));
      }
      const int slot = 2 * n_a + n_b;
      for (int prev = 0; prev < slot; ++prev) {
        if (chosen[static_cast<std::size_t>(prev)] == best) {
          throw Error(ErrorCode::LabelingAmbiguous, "two labels share one eigenvector");
        }
      }
      chosen[static_cast<std::size_t>(slot)] = best;
      out.levels[static_cast<std::size_t>(slot)] =
          DressedLevel{solver.eigenvalues()[best], overlap, vectors.col(best)};
    }
  }
  return out;
}

double extract_gck(const DressedLevels& levels) {
  const double combination = levels.at(1, 1).energy - levels.at(1, 0).energy -
                             levels.at(0, 1).energy + levels.at(0, 0).energy;
  return combination / kPhys.hbar;
}

double extract_grp(const DressedLevels& levels, const TripartiteModel& model,
                   const FockConfig& cfg) {
  const ModeOperators ops = mode_operators(cfg.n_cavity, cfg.n_mech);
  const Mat x_m = Eigen::kroneckerProduct(Eigen::Matrix2cd::Identity(), ops.x_m);
  const auto mean_x = [&](const DressedLevel& level) {
    return (level.state.adjoint() * x_m * level.state)(0, 0).real();
  };
  return model.omega_m * (mean_x(levels.at(1, 0)) - mean_x(levels.at(0, 0))) / 2.0;
}

FockCouplings fock_couplings(const TripartiteModel& model, const FockConfig& cfg) {
  const Mat h = build_tripartite_hamiltonian(model, cfg);
  const DressedLevels levels = dressed_levels(h, model, cfg);
  return {extract_gck(levels), extract_grp(levels, model, cfg), levels.min_overlap()};
}

FockReport fock_oracle(const ValidatedParams& params, BiasPoint bias, const FockConfig& cfg) {
  const TripartiteModel model = make_tripartite_model(params, bias);
  FockConfig refined_cfg = cfg;
  refined_cfg.n_cavity = std::min(2 * cfg.n_cavity, kMaxFockCutoff);
  refined_cfg.n_mech = std::min(2 * cfg.n_mech, kMaxFockCutoff);

  FockReport r{};
  r.base = fock_couplings(model, cfg);
  r.refined = fock_couplings(model, refined_cfg);
  r.drift_ck = relative_change(r.base.g_ck, r.refined.g_ck);
  r.drift_rp = relative_change(r.base.g_rp, r.refined.g_rp);
  return r;
}

}  // namespace cpbom
