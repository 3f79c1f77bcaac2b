#include "magnon_fisher/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magnon_fisher/errors.hpp"
#include "magnon_fisher/nelder_mead.hpp"

namespace magnon {

std::string to_string(MeasurementKind k) {
  switch (k) {
    case MeasurementKind::HomodyneQ: return "hom-q";
    case MeasurementKind::HomodyneP: return "hom-p";
    case MeasurementKind::Heterodyne: return "het";
    case MeasurementKind::GeneralGaussian: return "ogm";
  }
  return "?";
}

MeasurementKind parse_measurement(const std::string& name) {
  if (name == "hom-q") return MeasurementKind::HomodyneQ;
  if (name == "hom-p") return MeasurementKind::HomodyneP;
  if (name == "het") return MeasurementKind::Heterodyne;
  if (name == "ogm") return MeasurementKind::GeneralGaussian;
  throw ConfigError("unknown measurement '" + name + "'");
}

Mat2 MeasurementSpec::covariance() const {
  switch (kind) {
    case MeasurementKind::Heterodyne: return Mat2::Identity();
    case MeasurementKind::GeneralGaussian: {
      const double c = std::cos(theta), s = std::sin(theta);
      Mat2 R;
      R << c, -s, s, c;
      const Vec2 diag(std::exp(-2.0 * r), std::exp(2.0 * r));
      return R * diag.asDiagonal() * R.transpose();
    }
    default:
      throw DomainError("homodyne measurements have no finite covariance; use the homodyne CFI");
  }
}

LocalState local_state(const GaussianState& state, const Sensitivity& sens, Mode mode) {
  const int o = quadrature_offset(mode);
  LocalState s;
  s.L = state.local(mode);
  s.d = state.local_mean(mode);
  s.dL = sens.d_cov.block<2, 2>(o, o);
  s.dd = sens.d_mean.segment<2>(o);
  return s;
}

double cfi_quadrature(double v, double dv, double dmu) {
  if (!(v > 0.0)) throw DomainError("homodyne CFI needs a positive quadrature variance");
  return (2.0 * v * dmu * dmu + dv * dv) / (2.0 * v * v);
}

double cfi_homodyne(const GaussianState& state, const Sensitivity& sens, int k) {
  if (k < 0 || k > 5) throw DomainError("quadrature index out of range");
  return cfi_quadrature(state.cov(k, k), sens.d_cov(k, k), sens.d_mean(k));
}

double cfi_rotated_homodyne(const LocalState& s, double theta) {
  const Vec2 u(std::cos(theta), std::sin(theta));
  return cfi_quadrature(u.dot(s.L * u), u.dot(s.dL * u), u.dot(s.dd));
}

double cfi_gaussian(const LocalState& s, const Mat2& sigma_M) {
  const Mat2 total = s.L + sigma_M;
  Eigen::LDLT<Mat2> ldlt(total);
  const Mat2 X = ldlt.solve(s.dL);
  return s.dd.dot(ldlt.solve(s.dd)) + 0.5 * (X * X).trace();
}

double cfi_gaussian(const LocalState& s, double theta, double r) {
  // Work in the frame where σ_M is diagonal; every term of det(σ + σ_M) is
  // then non-negative and large r costs no precision.
  const double c = std::cos(theta), sn = std::sin(theta);
  Mat2 R;
  R << c, -sn, sn, c;
  const Mat2 L = R.transpose() * s.L * R;
  const Mat2 dL = R.transpose() * s.dL * R;
  const Vec2 dd = R.transpose() * s.dd;
  const double em = std::exp(-2.0 * r), ep = std::exp(2.0 * r);
  const double a = L(0, 0) + em, b = L(0, 1), cc = L(1, 1) + ep;
  const double det = s.L.determinant() + 1.0 + L(1, 1) * em + L(0, 0) * ep;
  Mat2 inv;
  inv << cc / det, -b / det, -b / det, a / det;
  const Mat2 X = inv * dL;
  return dd.dot(inv * dd) + 0.5 * (X * X).trace();
}

double cfi_gaussian(const GaussianState& state, const Sensitivity& sens, Mode mode,
                    const MeasurementSpec& spec) {
  const int o = quadrature_offset(mode);
  switch (spec.kind) {
    case MeasurementKind::HomodyneQ: return cfi_homodyne(state, sens, o);
    case MeasurementKind::HomodyneP: return cfi_homodyne(state, sens, o + 1);
    case MeasurementKind::Heterodyne: return cfi_heterodyne(state, sens, mode);
    case MeasurementKind::GeneralGaussian:
      return cfi_gaussian(local_state(state, sens, mode), spec.theta, spec.r);
  }
  return 0.0;
}

double cfi_heterodyne(const LocalState& s) {
  const Mat2 aleph = s.L + Mat2::Identity();
  const double det = aleph.determinant();
  if (!(std::abs(det) > 1e-14 * aleph.squaredNorm())) {
    throw SingularAleph("heterodyne covariance L + 1 is singular");
  }
  return cfi_gaussian(s, Mat2::Identity());
}

double cfi_heterodyne(const GaussianState& state, const Sensitivity& sens, Mode mode) {
  return cfi_heterodyne(local_state(state, sens, mode));
}

namespace {

double wrap_theta(double theta) {
  double t = std::fmod(theta, std::numbers::pi);
  if (t < 0.0) t += std::numbers::pi;
  return t;
}

}  // namespace

OgmResult optimal_gaussian(const LocalState& s, const OgmOptions& opt) {
  const double r_max = opt.r_max;
  auto objective = [&](const std::array<double, 2>& v) {
    const double r = std::clamp(v[1], -r_max, r_max);
    return -cfi_gaussian(s, v[0], r);
  };

  OgmResult res;
  double best = -std::numeric_limits<double>::infinity();
  std::array<double, 2> best_x{0.0, 0.0};
  const double pi = std::numbers::pi;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const std::array<double, 2> seed{i * pi / 4.0, -0.75 * r_max + j * 0.5 * r_max};
      const auto nm = nelder_mead<2>(objective, seed, {pi / 8.0, 0.125 * r_max},
                                     opt.diameter_tol);
      res.restart_values.push_back(-nm.f);
      if (-nm.f > best) {
        best = -nm.f;
        best_x = nm.x;
      }
    }
  }
  double theta = wrap_theta(best_x[0]);
  double r = std::clamp(best_x[1], -r_max, r_max);
  res.F = best;

  if (std::abs(r) >= r_max - 1e-6) {
    res.boundary_maximum = true;
    // Compare against the exact homodyne limit along the best direction.
    auto hom = [&](const std::array<double, 1>& t) { return -cfi_rotated_homodyne(s, t[0]); };
    double hom_best = -std::numeric_limits<double>::infinity();
    double hom_theta = 0.0;
    for (int i = 0; i < 16; ++i) {
      const auto nm = nelder_mead<1>(hom, {i * pi / 16.0}, {pi / 32.0}, opt.diameter_tol);
      if (-nm.f > hom_best) {
        hom_best = -nm.f;
        hom_theta = nm.x[0];
      }
    }
    if (hom_best >= res.F) {
      res.F = hom_best;
      theta = wrap_theta(hom_theta);
      r = r_max;
    }
  }
  res.spec = MeasurementSpec::general(theta, r);
  return res;
}

OgmResult optimal_gaussian(const GaussianState& state, const Sensitivity& sens, Mode mode,
                           const OgmOptions& opt) {
  return optimal_gaussian(local_state(state, sens, mode), opt);
}

double cfi(const GaussianState& state, const Sensitivity& sens, Mode mode, MeasurementKind kind) {
  if (kind == MeasurementKind::GeneralGaussian) return optimal_gaussian(state, sens, mode).F;
  return cfi_gaussian(state, sens, mode, MeasurementSpec{kind, 0.0, 0.0});
}

}  // namespace magnon
