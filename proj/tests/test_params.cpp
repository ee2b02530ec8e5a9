#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cpbom/config.hpp"
#include "cpbom/errors.hpp"
#include "cpbom/params.hpp"
#include "test_support.hpp"

using namespace cpbom;

namespace {

using testing::code_of;
using testing::kGhz;

CircuitParams symmetric_params() {
  CircuitParams p;
  p.c_cavity = 0.318e-12;
  p.l_cavity = 3.18e-9;
  p.c_g10 = 0.4e-15;
  p.c_g2 = 100e-15;
  p.c_j1 = 0.12e-15;
  p.c_j2 = 0.12e-15;
  p.e_j1 = 3.75 * kGhz;
  p.e_j2 = 3.75 * kGhz;
  p.v_gate = 10.0;
  p.gap_d0 = 100e-9;
  p.x_zp = 3.2e-13;
  p.omega_m = 2.0 * std::numbers::pi * 1e7;
  return p;
}

}  // namespace

TEST_CASE("physical constants are tied together exactly") {
  CHECK(kPhys.phi0 == kPhys.h_planck / (2.0 * kPhys.e_charge));
  CHECK(kPhys.hbar == doctest::Approx(kPhys.h_planck / (2.0 * std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("cavity impedance and bare frequency") {
  const ValidatedParams v = validate(symmetric_params());
  CHECK(v.z0() == doctest::Approx(100.0).epsilon(1e-12));
  const double omega_bare = 1.0 / std::sqrt(v.raw().l_cavity * v.raw().c_cavity);
  CHECK(omega_bare / (2.0 * std::numbers::pi) == doctest::Approx(5e9).epsilon(1e-2));
}

TEST_CASE("zero-point scales at Z0 = 100 Ohm") {
  const ValidatedParams v = validate(symmetric_params());
  // Independent evaluation in extended precision.
  const long double e = 1.602176634e-19L;
  const long double hbar = 6.62607015e-34L / (2.0L * std::numbers::pi_v<long double>);
  const long double z0 = 100.0L;
  const long double eta = std::sqrt(e * e * z0 / (2.0L * hbar));
  const long double q_zp = std::sqrt(hbar / (2.0L * z0));
  CHECK(v.eta() == doctest::Approx(static_cast<double>(eta)).epsilon(1e-10));
  CHECK(v.q_zp() == doctest::Approx(static_cast<double>(q_zp)).epsilon(1e-10));
  CHECK(v.eta() == doctest::Approx(0.110).epsilon(5e-3));
  CHECK(v.q_zp() == doctest::Approx(7.26e-19).epsilon(1e-3));
  CHECK(2.0 * v.phi_zp() * v.q_zp() == doctest::Approx(kPhys.hbar).epsilon(1e-12));
}

TEST_CASE("derived junction quantities") {
  const ValidatedParams v = validate(symmetric_params());
  CHECK(v.c_j() == doctest::Approx(0.24e-15));
  CHECK(v.e_j() == doctest::Approx(7.5 * kGhz));
  CHECK(v.asymmetry() == 0.0);
  CHECK(v.e_c() == doctest::Approx(kPhys.e_charge * kPhys.e_charge / (2.0 * 0.64e-15)));

  CircuitParams p = symmetric_params();
  p.e_j1 = 3.0 * kGhz;
  p.e_j2 = 1.0 * kGhz;
  CHECK(validate(p).asymmetry() == doctest::Approx(0.5));
  std::swap(p.e_j1, p.e_j2);
  CHECK(validate(p).asymmetry() == doctest::Approx(0.5));
}

TEST_CASE("gate geometry matches finite differences of the plate law") {
  const ValidatedParams v = validate(symmetric_params());
  const double c0 = v.raw().c_g10;
  const double d0 = v.raw().gap_d0;
  auto plate = [&](double x) { return c0 * d0 / (d0 - x); };
  const double h = 1e-4 * d0;
  const double first = (plate(h) - plate(-h)) / (2.0 * h);
  const double second = (plate(h) - 2.0 * plate(0.0) + plate(-h)) / (h * h);
  const GateGeometry& g = v.geometry();
  CHECK(g.c_g1_prime == doctest::Approx(first).epsilon(1e-6));
  CHECK(g.c_g1_double_prime == doctest::Approx(second).epsilon(1e-6));
  CHECK(g.dng_dx == doctest::Approx(-g.c_g1_prime * v.raw().v_gate / (2.0 * kPhys.e_charge)));
  CHECK(v.c_g1_at(0.0) == c0);
  CHECK(v.c_g1_at(1e-9) == doctest::Approx(plate(1e-9)).epsilon(1e-9));
}

TEST_CASE("validation rejects bad parameter sets") {
  CircuitParams p = symmetric_params();
  p.c_cavity = 0.0;
  CHECK(code_of([&] { validate(p); }) == ErrorCode::NonPositiveParameter);

  p = symmetric_params();
  p.l_cavity = -1e-9;
  CHECK(code_of([&] { validate(p); }) == ErrorCode::NonPositiveParameter);

  p = symmetric_params();
  p.x_zp = 0.5 * p.gap_d0;
  CHECK(code_of([&] { validate(p); }) == ErrorCode::XzpExceedsGap);

  p = symmetric_params();
  p.e_j1 = -1e-24;
  CHECK(code_of([&] { validate(p); }) == ErrorCode::NegativeJosephsonEnergy);

  p = symmetric_params();
  p.band_index = -1;
  CHECK(code_of([&] { validate(p); }) == ErrorCode::NonPositiveParameter);

  p = symmetric_params();
  p.e_j1 = 0.0;  // d = 1 leaves a single junction
  CHECK(code_of([&] { validate(p); }) == ErrorCode::NonPositiveParameter);

  p = symmetric_params();
  p.e_j1 = p.e_j2 = 0.0;  // no junction coupling at all is allowed
  CHECK(validate(p).e_j() == 0.0);
}

TEST_CASE("params_from_energies back-solves the island capacitance") {
  CircuitParams rest = symmetric_params();
  const CircuitParams p = params_from_energies(30.0 * kGhz, 7.5 * kGhz, 0.0, 0.4e-15, rest);
  const ValidatedParams v = validate(p);
  CHECK(v.c_sigma1() == doctest::Approx(0.645e-15).epsilon(2e-3));
  CHECK(v.e_c() == doctest::Approx(30.0 * kGhz).epsilon(1e-12));
  CHECK(v.e_j() / v.e_c() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p.c_j1 == p.c_j2);

  const CircuitParams q = params_from_energies(30.0 * kGhz, 5.0 * kGhz, 0.0, 0.4e-15, rest);
  CHECK(q.e_j1 == doctest::Approx(2.5 * kGhz));
  CHECK(q.e_j2 == doctest::Approx(2.5 * kGhz));

  const CircuitParams a = params_from_energies(30.0 * kGhz, 4.0 * kGhz, 0.25, 0.4e-15, rest);
  CHECK(validate(a).asymmetry() == doctest::Approx(0.25));
  CHECK(validate(a).e_j() == doctest::Approx(4.0 * kGhz));

  CHECK(code_of([&] { params_from_energies(250.0 * kGhz, 5.0 * kGhz, 0.0, 0.4e-15, rest); }) ==
        ErrorCode::InfeasibleCharging);
}

TEST_CASE("round trip through params_from_energies") {
  const CircuitParams rest = symmetric_params();
  for (double ec_ghz : {1.0, 7.3, 30.0, 120.0}) {
    const CircuitParams p = params_from_energies(ec_ghz * kGhz, 3.0 * kGhz, 0.1, 0.01e-15, rest);
    CHECK(validate(p).e_c() == doctest::Approx(ec_ghz * kGhz).epsilon(1e-12));
  }
}

TEST_CASE("ratio ladder keeps E_J and the gate fraction") {
  const ValidatedParams base = validate(default_params());
  const double fraction = base.raw().c_g10 / base.c_sigma1();
  for (double ratio : {0.25, 0.1, 0.02}) {
    const ValidatedParams v = validate(params_at_ratio(base, ratio, 5.0 * kGhz));
    CHECK(v.e_j() == doctest::Approx(5.0 * kGhz));
    CHECK(v.e_j() / v.e_c() == doctest::Approx(ratio).epsilon(1e-12));
    CHECK(v.raw().c_g10 / v.c_sigma1() == doctest::Approx(fraction).epsilon(1e-12));
    CHECK(v.raw().v_gate == base.raw().v_gate);
  }
}

TEST_CASE("default parameter set") {
  const ValidatedParams v = validate(default_params());
  CHECK(v.e_c() / kGhz == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(v.e_j() / kGhz == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(v.z0() == doctest::Approx(100.0));
  CHECK(v.raw().band_index == 0);
  CHECK(v.raw().omega_m == doctest::Approx(2.0 * std::numbers::pi * 1e7));
}
