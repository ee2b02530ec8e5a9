#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "cpbom/fock.hpp"
#include "test_support.hpp"

using namespace cpbom;
using testing::code_of;

namespace {

// Tripartite model with every coupling switched off.
TripartiteModel decoupled_model() {
  TripartiteModel m{};
  m.fields = {2.0e-24, 0.5e-24, -3.0e-24, 0.0};
  m.fields.b_norm = std::sqrt(2.0 * 2.0 + 0.5 * 0.5 + 3.0 * 3.0) * 1e-24;
  m.coeffs = CouplingCoefficients{};
  m.omega_c = 2.0 * std::numbers::pi * 5e9;
  m.omega_m = 2.0 * std::numbers::pi * 1e7;
  return m;
}

FockConfig cutoffs(int n_cavity, int n_mech) {
  FockConfig cfg;
  cfg.n_cavity = n_cavity;
  cfg.n_mech = n_mech;
  return cfg;
}

}  // namespace

TEST_CASE("Fock cutoff limits") {
  CHECK(code_of([] { check_fock_config(cutoffs(3, 8)); }) == ErrorCode::ConfigInvalid);
  CHECK(code_of([] { check_fock_config(cutoffs(8, 33)); }) == ErrorCode::ConfigInvalid);
  CHECK_NOTHROW(check_fock_config(cutoffs(4, 4)));
  CHECK_NOTHROW(check_fock_config(cutoffs(32, 32)));
  CHECK(2 * kMaxFockCutoff * kMaxFockCutoff <= kMaxFockDimension);
}

TEST_CASE("tripartite Hamiltonian is Hermitian") {
  const ValidatedParams p = testing::defaults();
  const Eigen::MatrixXcd h = build_tripartite_hamiltonian(p, {0.3, 0.1}, cutoffs(6, 5));
  REQUIRE(h.rows() == 2 * 6 * 5);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vacuum diagonal element") {
  const ValidatedParams p = testing::defaults();
  const TripartiteModel model = make_tripartite_model(p, {0.3, 0.0});
  const Eigen::MatrixXcd h = build_tripartite_hamiltonian(model, cutoffs(6, 6));
  // |1, 0, 0>: every displacement and momentum has zero vacuum mean, so only
  // the static field and the ground-energy offset survive.
  const double expected = 0.5 * model.fields.b_norm - 0.5 * model.fields.b3;
  CHECK(h(0, 0).real() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(h(0, 0).imag() == 0.0);
}

TEST_CASE("decoupled spectrum is the bare sum") {
  const TripartiteModel m = decoupled_model();
  FockConfig cfg = cutoffs(5, 6);
  cfg.pin_mechanics = false;
  const Eigen::MatrixXcd h = build_tripartite_hamiltonian(m, cfg);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const double hbar = kPhys.hbar;
  std::vector<double> expected;
  for (double qubit : {0.0, m.fields.b_norm}) {
    for (int n_a = 0; n_a < cfg.n_cavity; ++n_a) {
      for (int n_b = 0; n_b < cfg.n_mech; ++n_b) {
        expected.push_back(qubit + hbar * m.omega_c * n_a + hbar * m.omega_m * n_b);
      }
    }
  }
  std::sort(expected.begin(), expected.end());
  const double scale = m.fields.b_norm + hbar * m.omega_c * cfg.n_cavity;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(solver.eigenvalues()[static_cast<Eigen::Index>(i)] ==
          doctest::Approx(expected[i]).scale(scale).epsilon(1e-12));
  }

  const Eigen::MatrixXcd& v = solver.eigenvectors();
  const double orthonormality =
      (v.adjoint() * v - Eigen::MatrixXcd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
  CHECK(orthonormality < 1e-10);

  const DressedLevels levels = dressed_levels(h, m, cfg);
  for (const auto& level : levels.levels) CHECK(level.overlap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(extract_gck(levels) == doctest::Approx(0.0).scale(m.omega_m).epsilon(1e-6));
  CHECK(extract_grp(levels, m, cfg) == doctest::Approx(0.0).scale(m.omega_m).epsilon(1e-9));
}

TEST_CASE("Hamiltonian size must match the cutoffs") {
  const TripartiteModel m = decoupled_model();
  const Eigen::MatrixXcd h = build_tripartite_hamiltonian(m, cutoffs(4, 4));
  CHECK(code_of([&] { dressed_levels(h, m, cutoffs(5, 4)); }) == ErrorCode::ConfigInvalid);
}

TEST_CASE("labels are clean away from qubit-cavity resonance deep in the charge regime") {
  const ValidatedParams p = testing::at_ratio(0.02);
  const FockConfig cfg = cutoffs(8, 8);
  for (double n_g : {0.25, 0.3, 0.7}) {
    const TripartiteModel m = make_tripartite_model(p, {n_g, 0.0});
    const DressedLevels levels = dressed_levels(build_tripartite_hamiltonian(m, cfg), m, cfg);
    CAPTURE(n_g);
    CHECK(levels.min_overlap() > 0.9);
  }
}

TEST_CASE("device parameters hybridise the mechanics beyond clean labelling") {
  // The qubit-mechanics coupling is hundreds of MHz against a 10 MHz
  // resonator, so the bare mechanical ladder is not a good basis.
  const ValidatedParams p = testing::defaults();
  const TripartiteModel m = make_tripartite_model(p, {0.3, 0.0});
  CHECK(std::abs(m.coeffs.g_m) > 10.0 * kPhys.hbar * m.omega_m);
  CHECK(code_of([&] { fock_couplings(m, cutoffs(8, 8)); }) == ErrorCode::LabelingAmbiguous);
}

TEST_CASE("qubit-cavity resonance makes the labels ambiguous") {
  const ValidatedParams p = testing::defaults();
  const FockConfig cfg = cutoffs(6, 4);
  int ambiguous = 0;
  for (int i = 0; i <= 100; ++i) {
    const BiasPoint bias{0.5, 0.2 + 0.002 * i};
    try {
      fock_couplings(make_tripartite_model(p, bias), cfg);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LabelingAmbiguous);
      ++ambiguous;
    }
  }
  CHECK(ambiguous > 0);
}

TEST_CASE("oracle agrees with third-order perturbation deep in the charge regime") {
  const ValidatedParams p = testing::at_ratio(0.02);
  const BiasPoint bias{0.25, 0.0};
  const FockReport report = fock_oracle(p, bias, cutoffs(8, 8));
  const CouplingResult p3 = perturbative_couplings(p, bias, 3);
  CHECK(report.base.g_ck == doctest::Approx(p3.g_ck).epsilon(0.10));
  CHECK(report.base.g_rp == doctest::Approx(p3.g_rp).epsilon(0.15));
  CHECK(report.drift_ck < kMaxCutoffDrift);
  CHECK(report.drift_rp < kMaxCutoffDrift);
  CHECK(report.base.min_overlap > 0.9);

  const FockCouplings twelve = fock_couplings(make_tripartite_model(p, bias), cutoffs(12, 12));
  CHECK(testing::rel_diff(twelve.g_ck, report.base.g_ck) < 1e-2);
  CHECK(testing::rel_diff(twelve.g_rp, report.base.g_rp) < 1e-2);
}

TEST_CASE("extracted radiation pressure coupling is odd about the degeneracy") {
  const ValidatedParams p = testing::at_ratio(0.02);
  const FockConfig cfg = cutoffs(8, 8);
  const FockCouplings below = fock_couplings(make_tripartite_model(p, {0.3, 0.0}), cfg);
  const FockCouplings above = fock_couplings(make_tripartite_model(p, {0.7, 0.0}), cfg);
  CHECK(below.g_rp * above.g_rp < 0.0);
  CHECK(std::abs(below.g_rp + above.g_rp) < 1e-2 * std::abs(below.g_rp));
}

TEST_SUITE("known_deviation") {
  TEST_CASE("labels are clean at the device parameters") {
    const ValidatedParams p = testing::defaults();
    const TripartiteModel m = make_tripartite_model(p, {0.3, 0.0});
    const FockConfig cfg = cutoffs(8, 8);
    const DressedLevels levels = dressed_levels(build_tripartite_hamiltonian(m, cfg), m, cfg);
    CHECK(levels.min_overlap() > 0.9);
  }

  TEST_CASE("mechanics drive and squeeze terms leave the cross-Kerr shift intact") {
    const ValidatedParams p = testing::at_ratio(0.02);
    const TripartiteModel m = make_tripartite_model(p, {0.25, 0.0});
    FockConfig plain = cutoffs(8, 8);
    FockConfig driven = plain;
    driven.include_h1_h2 = true;
    const double base = fock_couplings(m, plain).g_ck;
    const double shifted = fock_couplings(m, driven).g_ck;
    CAPTURE(base);
    CAPTURE(shifted);
    CHECK(testing::rel_diff(base, shifted) < 1e-2);
  }
}
