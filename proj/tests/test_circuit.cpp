#include <doctest.h>

#include <cmath>
#include <random>

#include "cpbom/circuit.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace cpbom;
using testing::code_of;
using testing::kTwoPi;
using testing::with_energies;

TEST_CASE("model names round trip") {
  for (Model m : {Model::circuit, Model::perturbative2, Model::perturbative3, Model::fock_oracle}) {
    CHECK(model_from_string(to_string(m)) == m);
  }
  CHECK(code_of([] { model_from_string("lumped"); }) == ErrorCode::ConfigInvalid);
}

TEST_CASE("effective capacitance without Josephson coupling") {
  const ValidatedParams p = with_energies(30.0, 0.0);
  const EffectiveCapacitance ce = effective_capacitance(p, {0.25, 0.0});
  const double cg1 = p.raw().c_g10;
  const double cj = p.c_j();
  CHECK(ce.value == doctest::Approx(cg1 * (cj - cg1) / (cg1 + cj)).epsilon(1e-9));
  CHECK(ce.band == 0);

  // A gate much weaker than the junction leaves only the geometric capacitance.
  const ValidatedParams weak = with_energies(30.0, 0.0, 0.0, 1e-19);
  const double c = effective_capacitance(weak, {0.25, 0.0}).value;
  CHECK(c == doctest::Approx(weak.raw().c_g10).epsilon(5.0 * weak.raw().c_g10 / weak.c_j()));
}

TEST_CASE("quantum capacitance near the degeneracy") {
  // The ground band curves downward at n_g = 1/2, so the quantum term adds to
  // the geometric series capacitance and grows as E_J shrinks.
  const ValidatedParams p = with_energies(30.0, 0.6);
  const double cg1 = p.raw().c_g10;
  const double cj = p.c_j();
  const double geometric = cg1 * cj / (cg1 + cj);
  const EffectiveCapacitance ce = effective_capacitance(p, {0.5, 0.0});
  const double e = kPhys.e_charge;
  const double curvature = oracle::band_derivative(p, {0.5, 0.0}, 0, 2);
  CHECK(curvature < 0.0);
  CHECK(ce.value - geometric == doctest::Approx(-cg1 * cg1 / (4.0 * e * e) * curvature).epsilon(1e-6));
  CHECK(ce.value > 10.0 * geometric);
  const double smaller_ej = effective_capacitance(with_energies(30.0, 0.3), {0.5, 0.0}).value;
  CHECK(smaller_ej > ce.value);
}

TEST_CASE("first-order request skips the second displacement derivative") {
  const ValidatedParams p = testing::defaults();
  const EffectiveCapacitance ce = effective_capacitance(p, {0.3, 0.1}, 1);
  CHECK(std::isnan(ce.d2));
  CHECK(std::isfinite(ce.d1));
  CHECK(effective_capacitance_at(p, {0.3, 0.1}, 0.0) == doctest::Approx(ce.value).epsilon(1e-10));
}

TEST_CASE("loaded cavity capacitance limits") {
  const ValidatedParams p = testing::defaults();
  const double cc = p.raw().c_cavity;
  const double cg2 = p.raw().c_g2;
  CHECK(loaded_capacitance(p, 0.0) == cc);
  CHECK(loaded_capacitance(p, 1e3) == doctest::Approx(cc + cg2).epsilon(1e-12));
  CHECK(code_of([&] { loaded_capacitance(p, -cg2); }) == ErrorCode::SeriesDivergence);
  CHECK(code_of([&] { loaded_capacitance(p, -cg2 * (1.0 + 1e-12)); }) ==
        ErrorCode::SeriesDivergence);
  // Just above -C_g2 the series branch is large and negative and swamps C_c.
  CHECK(code_of([&] { loaded_capacitance(p, -0.999 * cg2); }) == ErrorCode::SeriesDivergence);
  // Just below it the branch flips to large and positive.
  CHECK(loaded_capacitance(p, -1.001 * cg2) > cc + cg2);
}

TEST_CASE("island loading shifts the cavity away from its bare resonance") {
  const ValidatedParams p = testing::defaults();
  const double bare = 1.0 / std::sqrt(p.raw().l_cavity * p.raw().c_cavity);
  CHECK(bare / kTwoPi == doctest::Approx(5e9).epsilon(1e-2));
  for (double n_g : {0.0, 0.3, 0.5}) {
    const double omega = cavity_frequency(p, {n_g, 0.0});
    const double c_eff = effective_capacitance(p, {n_g, 0.0}).value;
    CAPTURE(n_g);
    // Positive island capacitance adds to the cavity; a negative quantum
    // capacitance that outweighs the geometric part removes from it.
    CHECK((omega < bare) == (c_eff > 0.0));
    CHECK(std::abs(omega / bare - 1.0) < 1e-2);
  }
  CHECK(cavity_frequency(p, {0.5, 0.0}) < bare);
}

TEST_SUITE("known_deviation") {
  TEST_CASE("loaded cavity frequency sits below the bare resonance at every bias") {
    const ValidatedParams p = testing::defaults();
    const double bare = 1.0 / std::sqrt(p.raw().l_cavity * p.raw().c_cavity);
    for (double n_g : {0.0, 0.3}) {
      CAPTURE(n_g);
      CHECK(cavity_frequency(p, {n_g, 0.0}) < bare);
    }
  }
}

TEST_CASE("direct coupling") {
  const ValidatedParams p = testing::defaults();
  const double g0 = direct_coupling(p);
  CHECK(g0 < 0.0);
  CHECK(g0 / kTwoPi == doctest::Approx(-10.0).epsilon(1e-3));

  // g_0 follows C_g1' = C_g10 / d0 linearly.
  CircuitParams wide = p.raw();
  wide.gap_d0 *= 2.0;
  CHECK(direct_coupling(validate(wide)) == doctest::Approx(0.5 * g0).epsilon(1e-12));
}

TEST_CASE("closed-form couplings equal derivatives of the cavity frequency") {
  const ValidatedParams p = testing::defaults();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> n_g_dist(0.05, 0.95);
  std::uniform_real_distribution<double> f_dist(0.0, 0.45);
  for (int i = 0; i < 8; ++i) {
    const BiasPoint bias{n_g_dist(rng), f_dist(rng)};
    if (std::abs(bias.n_g0 - 0.5) < 0.02) continue;
    const CouplingResult r = cross_kerr_coupling(p, bias);
    const double x_zp = p.raw().x_zp;
    const oracle::FrequencySlopes ref = oracle::cavity_frequency_slopes(p, bias);
    const double g_rp_ref = -ref.first * x_zp;
    const double g_ck_ref = ref.second * x_zp * x_zp;
    CAPTURE(bias.n_g0);
    CAPTURE(bias.f);
    CHECK(r.g_rp == doctest::Approx(g_rp_ref).epsilon(1e-6));
    CHECK(r.g_ck == doctest::Approx(g_ck_ref).epsilon(1e-4));
  }
}

TEST_CASE("radiation pressure and cross-Kerr entry points agree") {
  const ValidatedParams p = testing::defaults();
  const CouplingResult rp = radiation_pressure_coupling(p, {0.37, 0.2});
  const CouplingResult ck = cross_kerr_coupling(p, {0.37, 0.2});
  CHECK(std::isnan(rp.g_rp) == false);
  CHECK(std::isnan(rp.g_ck));
  CHECK(rp.g_rp == ck.g_rp);
  CHECK(rp.omega_c == ck.omega_c);
  CHECK(ck.enhancement == doctest::Approx(ck.g_rp / ck.g_0));
  CHECK(ck.model_tag == Model::circuit);
}

TEST_CASE("couplings around the degeneracy point") {
  const ValidatedParams p = testing::defaults();
  const CouplingResult mid = cross_kerr_coupling(p, {0.5, 0.0});
  CHECK(mid.g_ck != 0.0);
  CHECK(std::abs(mid.g_rp) < 1e-3 * std::abs(mid.g_ck));

  const CouplingResult below = cross_kerr_coupling(p, {0.4, 0.0});
  const CouplingResult above = cross_kerr_coupling(p, {0.6, 0.0});
  // The charge-dispersion part of g_rp is odd about n_g = 1/2; the geometric
  // part is even but orders of magnitude smaller.
  CHECK(below.g_rp * above.g_rp < 0.0);
  CHECK(std::abs(below.g_rp + above.g_rp) < 1e-3 * std::abs(below.g_rp));
  CHECK(std::abs(below.g_ck - above.g_ck) < 1e-2 * std::abs(below.g_ck));
}

TEST_CASE("flux reversal leaves the couplings unchanged") {
  const ValidatedParams p = testing::defaults();
  for (double n_g : {0.1, 0.33, 0.47}) {
    const CouplingResult plus = cross_kerr_coupling(p, {n_g, 0.21});
    const CouplingResult minus = cross_kerr_coupling(p, {n_g, -0.21});
    CHECK(plus.g_rp == doctest::Approx(minus.g_rp).epsilon(1e-12));
    CHECK(plus.g_ck == doctest::Approx(minus.g_ck).epsilon(1e-12));
  }
}

TEST_CASE("pure cross-Kerr Hamiltonian") {
  const ValidatedParams p = testing::defaults();
  const CkHamiltonian h = effective_ck_hamiltonian(p, {0.5, 0.0});
  CHECK(h.g_ck != 0.0);
  CHECK(h.omega_m == p.raw().omega_m);
  CHECK(h.kappa_low == doctest::Approx(kTwoPi * 1e6));
  CHECK(h.kappa_high == doctest::Approx(kTwoPi * 1e7));
  CHECK(h.g_ck_over_kappa_low == doctest::Approx(h.g_ck / h.kappa_low));
  CHECK(h.g_ck_over_kappa_high == doctest::Approx(h.g_ck / h.kappa_high));

  CHECK(code_of([&] { effective_ck_hamiltonian(p, {0.3, 0.0}); }) ==
        ErrorCode::NotInPureCkRegime);
  // A looser gate admits the same point.
  CHECK_NOTHROW(effective_ck_hamiltonian(p, {0.3, 0.0}, 1e9));
}

TEST_CASE("exact crossing propagates as non-analytic") {
  const ValidatedParams p = testing::defaults();
  CHECK(code_of([&] { cross_kerr_coupling(p, {0.5, 0.5}); }) == ErrorCode::NonAnalyticPoint);
}
