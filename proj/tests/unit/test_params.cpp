#include <doctest.h>

#include <cmath>
#include <numbers>

#include "magnon_fisher/errors.hpp"
#include "magnon_fisher/params.hpp"

using namespace magnon;
using constants::two_pi;

TEST_CASE("bose occupancy") {
  CHECK(bose_occupancy(two_pi * 1e9, 0.0) == 0.0);
  // hbar w / kT = ln 2 gives exactly one quantum
  const double T = 0.05;
  const double w = std::log(2.0) * constants::k_B * T / constants::hbar;
  CHECK(bose_occupancy(w, T) == doctest::Approx(1.0).epsilon(1e-12));
  // direct scalar evaluation: exp(-x) dominates at x ~ 48
  const double x = constants::hbar * two_pi * 10e9 / (constants::k_B * 10e-3);
  CHECK(bose_occupancy(two_pi * 10e9, 10e-3) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
  CHECK(bose_occupancy(two_pi * 10e9, 10e-3) == doctest::Approx(1.4e-21).epsilon(0.1));
  CHECK(bose_occupancy(two_pi * 10e9, 1e-6) == 0.0);
  CHECK_THROWS_AS(bose_occupancy(two_pi, -1.0), DomainError);
  CHECK_THROWS_AS(bose_occupancy(0.0, 1.0), DomainError);
}

TEST_CASE("bose occupancy is monotone") {
  for (double T = 0.01; T < 1.0; T *= 1.3) {
    for (double w = two_pi * 1e9; w < two_pi * 20e9; w *= 1.2) {
      CHECK(bose_occupancy(w, T * 1.3) > bose_occupancy(w, T));
      CHECK(bose_occupancy(w * 1.2, T) < bose_occupancy(w, T));
    }
  }
}

TEST_CASE("drive amplitude") {
  CHECK(drive_amplitude(0.0, two_pi * 10e9, two_pi * 5e6) == 0.0);
  const double E = drive_amplitude(0.5, two_pi * 10e9, two_pi * 5e6);
  CHECK(E == doctest::Approx(1.54e15).epsilon(0.01));
  CHECK(drive_amplitude(2.0, two_pi * 10e9, two_pi * 5e6) / E == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(drive_amplitude(1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("total spin") {
  const double s = total_spin(250e-6, constants::rho_yig);
  CHECK(s == doctest::Approx(1.75e17).epsilon(0.015));
  CHECK(total_spin(500e-6, constants::rho_yig) / s == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(total_spin(250e-6, 0.0) == 0.0);
  CHECK_THROWS_AS(total_spin(0.0, 1.0), DomainError);
}

namespace {
MaterialParams yig() {
  MaterialParams m;
  m.V_m = sphere_volume(250e-6);
  m.M_b = 1.4e5;  // A/m
  m.H_B = 0.36;   // T
  m.V_a = 1e-6;
  // K_an chosen so that K = 2π × 2 μHz at this volume
  m.K_an = two_pi * 2e-6 * m.V_m * m.M_b * m.M_b / (m.mu0 * m.gamma_e * m.gamma_e);
  return m;
}
}  // namespace

TEST_CASE("magnon frequency, Kerr coefficient and coupling") {
  MaterialParams m = yig();
  CHECK(kerr_coefficient(m) == doctest::Approx(two_pi * 2e-6).epsilon(1e-12));
  MaterialParams big = m;
  big.V_m *= 2.0;
  CHECK(kerr_coefficient(big) == doctest::Approx(0.5 * kerr_coefficient(m)).epsilon(1e-14));

  const double S = 0.5 * 5.0 * m.rho * m.V_m;
  CHECK(magnon_frequency(m) ==
        doctest::Approx(m.gamma_e * m.H_B - 2.0 * two_pi * 2e-6 * S).epsilon(1e-12));
  MaterialParams iso = m;
  iso.K_an = 0.0;
  CHECK(magnon_frequency(iso) == doctest::Approx(iso.gamma_e * iso.H_B).epsilon(1e-15));
  MaterialParams unbiased = m;
  unbiased.H_B = 0.0;
  CHECK(magnon_frequency(unbiased) < 0.0);

  const double w = two_pi * 10e9;
  const double g = coupling_from_geometry(m, w);
  const double hand = std::sqrt(5.0 * m.rho * m.V_m) *
                      std::sqrt(m.mu0 * m.gamma_e * m.gamma_e * w / (4.0 * m.V_a));
  CHECK(g == doctest::Approx(hand).epsilon(1e-14));
  MaterialParams cavity = m;
  cavity.V_a *= 4.0;
  CHECK(coupling_from_geometry(cavity, w) == doctest::Approx(0.5 * g).epsilon(1e-14));
  MaterialParams empty = m;
  empty.rho = 0.0;
  CHECK(coupling_from_geometry(empty, w) == 0.0);
}

TEST_CASE("baseline and validation") {
  SystemParams p = baseline();
  CHECK_NOTHROW(validate(p));
  CHECK(consistency_warnings(p).empty());
  CHECK(p.omega_a2 - p.omega_l == doctest::Approx(two_pi * 40e6));
  p.delta_m += two_pi * 1e6;
  CHECK(consistency_warnings(p).size() == 1);
  SystemParams q = baseline();
  q.gamma_m = 0.0;
  CHECK_THROWS_AS(validate(q), DomainError);
  q = baseline();
  q.T = -1.0;
  CHECK_THROWS_AS(validate(q), DomainError);
  CHECK(total_linewidth(1.0, 2.0) == 3.0);
}
