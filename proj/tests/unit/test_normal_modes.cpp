#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "magnon_fisher/errors.hpp"
#include "magnon_fisher/normal_modes.hpp"

using namespace magnon;
using constants::two_pi;

TEST_CASE("Bogoliubov parameters at baseline") {
  const SystemParams p = baseline();
  const SteadyState ss = solve_steady(p);
  const BogoliubovParams b = bogoliubov(p, ss);
  CHECK(b.alpha * b.alpha - b.beta * b.beta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.beta >= 0.0);
  CHECK(b.phi > -M_PI);
  CHECK(b.phi <= M_PI);
  // ±ℰ are the eigenvalues of the fluctuation matrix [[Δ_eff, s], [−s*, −Δ_eff]]
  const cplx s = 2.0 * p.K * ss.m_mean * ss.m_mean;
  Eigen::Matrix2cd H;
  H << ss.delta_eff, s, -std::conj(s), -ss.delta_eff;
  const Eigen::Vector2cd ev = Eigen::ComplexEigenSolver<Eigen::Matrix2cd>(H).eigenvalues();
  const double E = std::max(ev[0].real(), ev[1].real());
  CHECK(b.E == doctest::Approx(E).epsilon(1e-10));
  // 2αβ = |s|/ℰ
  CHECK(2.0 * b.alpha * b.beta == doctest::Approx(std::abs(s) / b.E).epsilon(1e-10));
}

TEST_CASE("Kerr-free magnon is its own normal mode") {
  SystemParams p = baseline();
  p.K = 0.0;
  const BogoliubovParams b = bogoliubov(p, solve_steady(p));
  CHECK(b.alpha == 1.0);
  CHECK(b.beta == 0.0);
  CHECK(b.E == doctest::Approx(p.delta_m));
}

TEST_CASE("degenerate normal mode") {
  SystemParams p = baseline();
  SteadyState ss = solve_steady(p);
  p.delta_m = -4.0 * p.K * ss.m_abs2 - two_pi * 1e6;
  CHECK_THROWS_AS(bogoliubov(p, ss), DegenerateNormalMode);
  p.delta_m = -3.0 * p.K * ss.m_abs2;
  CHECK_THROWS_AS(bogoliubov(p, ss), DegenerateNormalMode);
  CHECK_THROWS_AS(peak_predictor(p, ss), NoCrossing);
}

TEST_CASE("hybrid cavity modes") {
  const SystemParams p = baseline();
  const HybridModes h = hybrid_modes(p);
  CHECK(h.omega_plus == doctest::Approx(p.delta_a1 + p.J));
  CHECK(h.omega_minus == doctest::Approx(p.delta_a1 - p.J));
  CHECK(h.f * h.f + h.h * h.h == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.G_plus * h.G_plus + h.G_minus * h.G_minus == doctest::Approx(p.g * p.g).epsilon(1e-15));
}

TEST_CASE("hybrid modes diagonalize the cavity block") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> det(-150e6, 150e6), tun(0.0, 60e6);
  for (int trial = 0; trial < 200; ++trial) {
    SystemParams p = baseline();
    p.delta_a1 = two_pi * det(rng);
    p.delta_a2 = two_pi * det(rng);
    p.J = trial % 10 == 0 ? 0.0 : two_pi * tun(rng);
    const HybridModes h = hybrid_modes(p);
    Eigen::Matrix2d M;
    M << p.delta_a1, p.J, p.J, p.delta_a2;
    const Eigen::Vector2d plus(h.f, -h.h), minus(h.h, h.f);
    const double scale = std::abs(p.delta_a1) + std::abs(p.delta_a2) + p.J;
    CHECK((M * plus - h.omega_plus * plus).norm() <= 1e-12 * scale);
    CHECK((M * minus - h.omega_minus * minus).norm() <= 1e-12 * scale);
    CHECK(h.omega_plus >= h.omega_minus);
  }
}

TEST_CASE("uncoupled cavities") {
  SystemParams p = baseline();
  p.J = 0.0;
  p.delta_a2 = p.delta_a1 + two_pi * 10e6;
  HybridModes h = hybrid_modes(p);
  CHECK(h.f == 0.0);
  CHECK(h.G_plus == doctest::Approx(p.g));
  CHECK(h.omega_plus == doctest::Approx(p.delta_a2));
  p.delta_a2 = p.delta_a1 - two_pi * 10e6;
  h = hybrid_modes(p);
  CHECK(h.f == 1.0);
  CHECK(h.G_minus == doctest::Approx(p.g));
  CHECK(h.omega_minus == doctest::Approx(p.delta_a2));
}

TEST_CASE("peak predictor") {
  SystemParams p = baseline();
  const SteadyState ss = solve_steady(p);
  const double E = bogoliubov(p, ss).E;
  const auto peaks = peak_predictor(p, ss);
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0] == doctest::Approx(E - p.J));
  CHECK(peaks[1] == doctest::Approx(E + p.J));
  p.J = 0.0;
  CHECK(peak_predictor(p, ss).size() == 1);
}

TEST_CASE("normal-mode identities on a random sample") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    SystemParams p = baseline();
    p.P_l = std::pow(10.0, -3.0 + 3.0 * u(rng));
    p.J = two_pi * 60e6 * u(rng);
    p.K = two_pi * 20e-6 * u(rng);
    p.g = two_pi * 60e6 * u(rng);
    set_cavity_detuning(p, two_pi * (-150e6 + 300e6 * u(rng)));
    p.delta_a2 += two_pi * 20e6 * (u(rng) - 0.5);
    set_magnon_detuning(p, two_pi * (200e6 * u(rng)));
    const HybridModes h = hybrid_modes(p);
    CHECK(std::abs(h.f * h.f + h.h * h.h - 1.0) <= 1e-10);
    CHECK(std::abs(h.G_plus * h.G_plus + h.G_minus * h.G_minus - p.g * p.g) <= 1e-10 * p.g * p.g);
    for (const auto& ss : steady_branches(p)) {
      const BogoliubovParams b = bogoliubov(p, ss);
      CHECK(std::abs(b.alpha * b.alpha - b.beta * b.beta - 1.0) <= 1e-10);
      ++checked;
    }
  }
  CHECK(checked >= 1000);
}
