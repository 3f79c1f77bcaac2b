#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "magnon_fisher/errors.hpp"
#include "magnon_fisher/measure.hpp"
#include "magnon_fisher/nelder_mead.hpp"
#include "oracles.hpp"

using namespace magnon;
using std::numbers::pi;

namespace {

struct Baseline {
  GaussianState state;
  Sensitivity sens;
  LocalState a2;
};

const Baseline& base() {
  static const Baseline b = [] {
    Baseline out;
    const SystemParams p = baseline();
    out.state = steady_gaussian_state(p);
    out.sens = sensitivity_analytic(p);
    out.a2 = local_state(out.state, out.sens, Mode::a2);
    return out;
  }();
  return b;
}

LocalState random_local(std::mt19937& rng) {
  std::normal_distribution<double> nd;
  LocalState s;
  Mat2 B;
  B << nd(rng), nd(rng), nd(rng), nd(rng);
  s.L = B * B.transpose() + 0.6 * Mat2::Identity();
  Mat2 C;
  C << nd(rng), nd(rng), nd(rng), nd(rng);
  s.dL = 0.5 * (C + C.transpose());
  s.dd << nd(rng), nd(rng);
  return s;
}

}  // namespace

TEST_CASE("quadrature CFI") {
  CHECK(cfi_quadrature(2.0, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(cfi_quadrature(2.0, 1.0, 0.0) == doctest::Approx(0.125));
  CHECK_THROWS_AS(cfi_quadrature(0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("homodyne and heterodyne against numerical integration") {
  const auto& b = base();
  const LocalState& s = b.a2;
  Eigen::MatrixXd S(1, 1), dS(1, 1);
  Eigen::VectorXd dmu(1);
  S << s.L(0, 0);
  dS << s.dL(0, 0);
  dmu << s.dd(0);
  CHECK(cfi_gaussian(b.state, b.sens, Mode::a2, MeasurementSpec::homodyne_q()) ==
        doctest::Approx(oracle::gaussian_cfi_by_integration(S, dS, dmu)).epsilon(1e-8));
  S << s.L(1, 1);
  dS << s.dL(1, 1);
  dmu << s.dd(1);
  CHECK(cfi_gaussian(b.state, b.sens, Mode::a2, MeasurementSpec::homodyne_p()) ==
        doctest::Approx(oracle::gaussian_cfi_by_integration(S, dS, dmu)).epsilon(1e-8));
  const Eigen::MatrixXd aleph = s.L + Mat2::Identity();
  const double F_het = cfi_heterodyne(s);
  CHECK(F_het == doctest::Approx(oracle::gaussian_cfi_by_integration(aleph, s.dL, s.dd, 401))
                     .epsilon(1e-7));
}

TEST_CASE("general Gaussian measurement against numerical integration") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    const LocalState s = random_local(rng);
    const MeasurementSpec spec = MeasurementSpec::general(0.3 + trial, 0.4 * trial - 0.3);
    const Mat2 sigma = s.L + spec.covariance();
    const double ref = oracle::gaussian_cfi_by_integration(sigma, s.dL, s.dd, 401);
    CHECK(cfi_gaussian(s, spec.theta, spec.r) == doctest::Approx(ref).epsilon(1e-7));
    CHECK(cfi_gaussian(s, spec.covariance()) == doctest::Approx(ref).epsilon(1e-7));
  }
}

TEST_CASE("heterodyne is the vacuum-covariance Gaussian measurement") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const LocalState s = random_local(rng);
    CHECK(cfi_heterodyne(s) == cfi_gaussian(s, Mat2::Identity()));
    CHECK(cfi_gaussian(s, 0.7, 0.0) == doctest::Approx(cfi_heterodyne(s)).epsilon(1e-13));
  }
  LocalState singular;
  singular.L = -Mat2::Identity();
  CHECK_THROWS_AS(cfi_heterodyne(singular), SingularAleph);
}

TEST_CASE("large squeezing reaches the homodyne limits") {
  const LocalState& s = base().a2;
  const double homQ = cfi_rotated_homodyne(s, 0.0);
  const double homP = cfi_rotated_homodyne(s, pi / 2);
  CHECK(cfi_gaussian(s, 0.0, 12.0) == doctest::Approx(homQ).epsilon(1e-8));
  CHECK(cfi_gaussian(s, 0.0, -12.0) == doctest::Approx(homP).epsilon(1e-8));
  CHECK(cfi_gaussian(s, pi / 2, 12.0) == doctest::Approx(homP).epsilon(1e-8));
  CHECK(homQ == doctest::Approx(cfi_homodyne(base().state, base().sens, 2)).epsilon(1e-14));
}

TEST_CASE("measurement angle has period pi") {
  std::mt19937 rng(13);
  const LocalState s = random_local(rng);
  for (double th : {0.1, 1.0, 2.5}) {
    CHECK(cfi_gaussian(s, th + pi, 0.8) == doctest::Approx(cfi_gaussian(s, th, 0.8)).epsilon(1e-12));
    CHECK(cfi_rotated_homodyne(s, th + pi) ==
          doctest::Approx(cfi_rotated_homodyne(s, th)).epsilon(1e-12));
  }
}

TEST_CASE("optimal measurement of a pure displacement is homodyne") {
  LocalState s;
  s.L = 0.7 * Mat2::Identity();
  s.dd << 1.3, 0.0;
  const OgmResult r = optimal_gaussian(s);
  CHECK(r.boundary_maximum);
  CHECK(r.F == doctest::Approx(1.3 * 1.3 / 0.7).epsilon(1e-10));
  const double t = std::fmod(r.spec.theta, pi);
  CHECK(std::min(t, pi - t) < 1e-4);
  CHECK(r.F == doctest::Approx(cfi_rotated_homodyne(s, 0.0)).epsilon(1e-10));
}

TEST_CASE("optimal measurement at baseline") {
  const auto& b = base();
  const OgmResult r = optimal_gaussian(b.a2);
  const double qfi = qfi_subsystem(b.state, b.sens, Mode::a2);
  const double homQ = cfi(b.state, b.sens, Mode::a2, MeasurementKind::HomodyneQ);
  const double het = cfi(b.state, b.sens, Mode::a2, MeasurementKind::Heterodyne);
  const double homP = cfi(b.state, b.sens, Mode::a2, MeasurementKind::HomodyneP);
  CHECK(r.F >= homQ);
  CHECK(r.F <= qfi * (1.0 + 1e-9));
  CHECK(qfi > homQ);
  CHECK(homQ > het);
  CHECK(het > homP);
  REQUIRE(r.restart_values.size() == 16);
  // every seed that converged in the interior lands on the same optimum
  for (double v : r.restart_values) CHECK(v <= r.F * (1.0 + 1e-12));
  // brute force over (θ, r)
  double grid_best = 0.0;
  for (int i = 0; i < 360; ++i)
    for (double rr = -12.0; rr <= 12.0; rr += 0.25)
      grid_best = std::max(grid_best, cfi_gaussian(b.a2, i * pi / 360, rr));
  CHECK(r.F >= grid_best * (1.0 - 1e-9));
}

TEST_CASE("multistart finds the global optimum of a two-peaked landscape") {
  // Covariance-only information with two local maxima in θ.
  LocalState s;
  s.L << 1.5, 0.2, 0.2, 0.9;
  s.dL << 0.4, 0.1, 0.1, -0.3;
  const OgmResult r = optimal_gaussian(s);
  int agree = 0, other = 0;
  for (double v : r.restart_values) {
    if (std::abs(v - r.F) <= 1e-9 * r.F) {
      ++agree;
    } else if (v < 0.9 * r.F) {
      ++other;
    }
  }
  CHECK(agree >= 4);
  CHECK(agree + other == 16);
  double grid_best = 0.0;
  for (int i = 0; i < 360; ++i)
    for (double rr = -12.0; rr <= 12.0; rr += 0.05)
      grid_best = std::max(grid_best, cfi_gaussian(s, i * pi / 360, rr));
  CHECK(r.F >= grid_best * (1.0 - 1e-9));
}

TEST_CASE("Nelder-Mead on a quadratic bowl") {
  const auto res = nelder_mead<2>(
      [](const std::array<double, 2>& x) {
        return (x[0] - 1.0) * (x[0] - 1.0) + 10.0 * (x[1] + 2.0) * (x[1] + 2.0);
      },
      {0.0, 0.0}, {0.5, 0.5}, 1e-10);
  CHECK(res.converged);
  CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(res.x[1] == doctest::Approx(-2.0).epsilon(1e-8));
}

TEST_CASE("measurement names") {
  CHECK(parse_measurement("hom-q") == MeasurementKind::HomodyneQ);
  CHECK(parse_measurement("ogm") == MeasurementKind::GeneralGaussian);
  CHECK(to_string(MeasurementKind::Heterodyne) == "het");
  CHECK_THROWS_AS(parse_measurement("photon-counting"), ConfigError);
  CHECK_THROWS_AS(MeasurementSpec::homodyne_q().covariance(), DomainError);
}
