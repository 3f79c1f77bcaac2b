#include "magnon_fisher/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "magnon_fisher/errors.hpp"

namespace magnon {

using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

Mat2 GaussianState::local(Mode mode) const {
  const int o = quadrature_offset(mode);
  return cov.block<2, 2>(o, o);
}

Mat2 GaussianState::correlation(Mode row, Mode col) const {
  return cov.block<2, 2>(quadrature_offset(row), quadrature_offset(col));
}

Vec2 GaussianState::local_mean(Mode mode) const {
  return mean.segment<2>(quadrature_offset(mode));
}

Mat2 symplectic_form_2() {
  Mat2 L;
  L << 0.0, 1.0, -1.0, 0.0;
  return L;
}

Mat6 symplectic_form() {
  Mat6 X = Mat6::Zero();
  for (int k = 0; k < 3; ++k) X.block<2, 2>(2 * k, 2 * k) = symplectic_form_2();
  return X;
}

Vec6 mean_quadratures(const SteadyState& ss) {
  const double r2 = std::sqrt(2.0);
  Vec6 mu;
  mu << r2 * ss.a1_mean.real(), r2 * ss.a1_mean.imag(), r2 * ss.a2_mean.real(),
      r2 * ss.a2_mean.imag(), r2 * ss.m_mean.real(), r2 * ss.m_mean.imag();
  return mu;
}

DriftMatrix build_drift(const SystemParams& p, const SteadyState& ss) {
  const cplx m2 = ss.m_mean * ss.m_mean;
  const double x = std::norm(ss.m_mean);
  const double delta_eff = p.delta_m + 4.0 * p.K * x;
  const double re_plus = -p.gamma_m + 2.0 * p.K * m2.imag();
  const double re_minus = -p.gamma_m - 2.0 * p.K * m2.imag();
  const double im_plus = (delta_eff + p.K) - 2.0 * p.K * m2.real();
  const double im_minus = -(delta_eff + p.K) - 2.0 * p.K * m2.real();

  DriftMatrix A;
  // clang-format off
  A << -p.gamma_a1,  p.delta_a1,  0.0,         p.J,         0.0,      0.0,
       -p.delta_a1, -p.gamma_a1, -p.J,         0.0,         0.0,      0.0,
        0.0,         p.J,        -p.gamma_a2,  p.delta_a2,  0.0,      p.g,
       -p.J,         0.0,        -p.delta_a2, -p.gamma_a2, -p.g,      0.0,
        0.0,         0.0,         0.0,         p.g,         re_plus,  im_plus,
        0.0,         0.0,        -p.g,         0.0,         im_minus, re_minus;
  // clang-format on
  return A;
}

DiffusionMatrix build_diffusion(const SystemParams& p) {
  const double d1 = (2.0 * bose_occupancy(p.omega_a1, p.T) + 1.0) * p.gamma_a1;
  const double d2 = (2.0 * bose_occupancy(p.omega_a2, p.T) + 1.0) * p.gamma_a2;
  const double dm = (2.0 * bose_occupancy(p.omega_m, p.T) + 1.0) * p.gamma_m;
  Vec6 diag;
  diag << d1, d1, d2, d2, dm, dm;
  return diag.asDiagonal();
}

Eigen::MatrixXd solve_lyapunov_general(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || C.rows() != n || C.cols() != n) {
    throw DomainError("solve_lyapunov: dimension mismatch");
  }
  const double s = A.cwiseAbs().maxCoeff();
  if (!(s > 0.0)) throw SingularSystem("solve_lyapunov: zero drift matrix");
  const Eigen::MatrixXd As = A / s;
  const Eigen::MatrixXd Cs = C / s;

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd kron(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      kron.block(i * n, j * n, n, n) = I(i, j) * As + As(i, j) * I;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(kron);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw SingularSystem("solve_lyapunov: Kronecker system is rank deficient");
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(Cs.data(), n * n);
  Eigen::VectorXd x = lu.solve(rhs);
  // one step of iterative refinement
  x += lu.solve(rhs - kron * x);
  return Eigen::Map<Eigen::MatrixXd>(x.data(), n, n);
}

Mat6 solve_lyapunov(const DriftMatrix& A, const DiffusionMatrix& D) {
  const auto report = check_stability(A);
  if (!report.stable || report.marginal) {
    throw UnstableDrift("drift matrix is not stable (max Re eig = " +
                        std::to_string(report.max_real_eig) + ")");
  }
  Mat6 V = solve_lyapunov_general(A, D);
  return 0.5 * (V + V.transpose());
}

double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& V,
                         const Eigen::MatrixXd& D) {
  const double dn = D.norm();
  const Eigen::MatrixXd R = A * V + V * A.transpose() + D;
  return dn > 0.0 ? R.norm() / dn : R.norm();
}

double min_uncertainty_eigenvalue(const Mat6& V) {
  const Eigen::Matrix<cplx, 6, 6> H =
      V.cast<cplx>() + cplx(0.0, 0.5) * symplectic_form().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, 6, 6>> solver(H, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

// Faddeev–LeVerrier on A/scale; returns α_k of the normalized matrix.
std::array<long double, 7> normalized_char_poly(const Mat6& A, double scale) {
  const LMat As = A.cast<long double>() / static_cast<long double>(scale);
  const LMat I = LMat::Identity(6, 6);
  std::array<long double, 7> alpha{};
  alpha[0] = 1.0L;
  LMat M = LMat::Zero(6, 6);
  for (int k = 1; k <= 6; ++k) {
    M = As * M + alpha[k - 1] * I;
    alpha[k] = -(As * M).trace() / static_cast<long double>(k);
  }
  return alpha;
}

std::array<long double, 6> hurwitz_long(const std::array<long double, 7>& alpha) {
  std::array<long double, 6> dets{};
  for (int k = 1; k <= 6; ++k) {
    LMat H = LMat::Zero(k, k);
    for (int i = 1; i <= k; ++i) {
      for (int j = 1; j <= k; ++j) {
        const int idx = 2 * i - j;
        if (idx >= 0 && idx <= 6) H(i - 1, j - 1) = alpha[idx];
      }
    }
    dets[k - 1] = H.fullPivLu().determinant();
  }
  return dets;
}

}  // namespace

std::array<double, 7> char_poly(const Mat6& A) {
  const double s = A.norm();
  std::array<double, 7> out{};
  out[0] = 1.0;
  if (s == 0.0) return out;
  const auto alpha = normalized_char_poly(A, s);
  long double sk = 1.0L;
  for (int k = 1; k <= 6; ++k) {
    sk *= s;
    out[k] = static_cast<double>(alpha[k] * sk);
  }
  return out;
}

std::array<double, 6> hurwitz_determinants(const std::array<double, 7>& alpha) {
  std::array<long double, 7> a{};
  for (int k = 0; k < 7; ++k) a[k] = alpha[k];
  const auto d = hurwitz_long(a);
  std::array<double, 6> out{};
  for (int k = 0; k < 6; ++k) out[k] = static_cast<double>(d[k]);
  return out;
}

StabilityReport check_stability(const Mat6& A) {
  StabilityReport r;
  const double norm = A.norm();
  Eigen::EigenSolver<Mat6> solver(A, false);
  r.max_real_eig = solver.eigenvalues().real().maxCoeff();
  const double band = 1e-9 * norm;
  r.marginal = std::abs(r.max_real_eig) <= band;
  r.stable = r.max_real_eig < -band;

  if (norm == 0.0) {
    r.hurwitz_ok = false;
    r.hurwitz.fill(0.0);
    return r;
  }
  const auto dets = hurwitz_long(normalized_char_poly(A, norm));
  r.hurwitz_ok = true;
  for (int k = 0; k < 6; ++k) {
    r.hurwitz[k] = static_cast<double>(dets[k]);
    if (!(dets[k] > 0.0L)) r.hurwitz_ok = false;
  }
  return r;
}

std::array<double, 7> closed_form_char_poly(const SystemParams& p, const SteadyState& ss) {
  const Mat6 A = build_drift(p, ss);
  const double Rp = A(4, 4), Rm = A(5, 5), Ip = A(4, 5), Im = A(5, 4);
  const double ga = p.gamma_a1, Da = p.delta_a1, g = p.g, J = p.J;
  const double g2 = g * g, g4 = g2 * g2, J2 = J * J, J4 = J2 * J2;
  const double ga2 = ga * ga, ga3 = ga2 * ga, ga4 = ga3 * ga, Da2 = Da * Da;

  const double eta1 = Rp + Rm;
  const double eta2 = Rp * Rm - Ip * Im;
  const double eta3 = Ip - Im;
  const double eta4 = ga2 + Da2;
  const double eta5 = J2 + Da2;
  const double mu0 = 6.0 * g2 + 4.0 * (eta5 + eta2);
  const double mu2 = 6.0 * (g2 + eta2) + 2.0 * eta5;
  const double mu3 = (4.0 * Da2 + 3.0 * g2 + 4.0 * J4) * eta1;
  const double mu5 = 2.0 * ga3 + J2 * (2.0 * ga - eta1) - (3.0 * ga2 + Da2) * eta1 +
                     2.0 * ga * Da * (Da - Ip + Im);
  const double mu6 = eta4 * eta1 - 2.0 * ga * eta2;
  const double mu7 = eta4 * eta1 - 4.0 * ga * eta2;
  const double mu8 = J4 + 2.0 * J2 * (ga2 - Da2) + eta4 * eta4;
  const double mu9 = eta4 * (ga * eta1 + Da * eta3) + J2 * (ga * eta1 - Da * eta3);

  std::array<double, 7> a{};
  a[0] = 1.0;
  a[1] = 4.0 * ga - eta1;
  a[2] = 2.0 * (g2 + J2) + 6.0 * ga2 + 2.0 * Da2 - 4.0 * eta1 + eta2;
  a[3] = 4.0 * ga3 - eta1 * (g2 + 2.0 * eta5) - 6.0 * ga2 * eta1 + ga * mu0;
  a[4] = ga4 - 4.0 * ga3 * eta1 + ga2 * mu2 - ga * mu3 + 2.0 * Rp * Rm * eta5;
  a[5] = 2.0 * g4 * ga - J4 * eta1 + g2 * mu5 - 2.0 * J2 * mu6 - eta4 * mu7;
  a[6] = g4 * eta4 + eta2 * mu8 - g2 * mu9;
  return a;
}

std::optional<ClosedFormCheck> closed_form_cross_check(const SystemParams& p,
                                                       const SteadyState& ss) {
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
  };
  if (!close(p.gamma_a1, p.gamma_a2) || !close(p.delta_a1, p.delta_a2)) return std::nullopt;
  ClosedFormCheck out;
  const Mat6 A = build_drift(p, ss);
  out.numeric = char_poly(A);
  out.closed_form = closed_form_char_poly(p, ss);
  const double s = A.norm();
  double sk = 1.0;
  for (int k = 0; k < 7; ++k) {
    const double denom = std::max(std::abs(out.numeric[k]), 1e-12 * sk);
    out.rel_diff[k] = std::abs(out.closed_form[k] - out.numeric[k]) / denom;
    out.max_rel_diff = std::max(out.max_rel_diff, out.rel_diff[k]);
    sk *= s;
  }
  return out;
}

GaussianState gaussian_state(const SystemParams& p, const SteadyState& ss) {
  GaussianState st;
  st.mean = mean_quadratures(ss);
  st.cov = solve_lyapunov(build_drift(p, ss), build_diffusion(p));
  return st;
}

GaussianState steady_gaussian_state(const SystemParams& p) {
  return gaussian_state(p, solve_steady(p));
}

}  // namespace magnon
