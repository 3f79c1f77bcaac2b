#include "magnon_fisher/fisher.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "magnon_fisher/errors.hpp"

namespace magnon {

std::string to_string(DerivativeMethod m) {
  return m == DerivativeMethod::analytic ? "analytic" : "stencil";
}

DerivativeMethod parse_derivative_method(const std::string& name) {
  if (name == "analytic") return DerivativeMethod::analytic;
  if (name == "stencil") return DerivativeMethod::stencil;
  throw ConfigError("unknown derivative method '" + name + "'");
}

Sensitivity sensitivity_stencil(const SystemParams& p, double dg_rel) {
  if (!(dg_rel > 0.0)) throw DomainError("sensitivity_stencil: dg_rel must be positive");
  double dg = dg_rel * std::abs(p.g);
  if (dg == 0.0) dg = dg_rel * std::max({p.gamma_a1, p.gamma_a2, p.gamma_m});

  auto evaluate = [&](int k) {
    SystemParams q = p;
    q.g = p.g + k * dg;
    try {
      return steady_gaussian_state(q);
    } catch (const MultistableRegime& e) {
      throw StencilCrossesInstability(std::string("shifted point is multistable: ") + e.what());
    } catch (const NoSteadyState& e) {
      throw StencilCrossesInstability(std::string("shifted point has no steady state: ") +
                                      e.what());
    } catch (const UnstableDrift& e) {
      throw StencilCrossesInstability(std::string("shifted point is unstable: ") + e.what());
    }
  };
  const auto m2 = evaluate(-2), m1 = evaluate(-1), p1 = evaluate(1), p2 = evaluate(2);
  Sensitivity s;
  s.method = DerivativeMethod::stencil;
  s.d_mean = (-p2.mean + 8.0 * p1.mean - 8.0 * m1.mean + m2.mean) / (12.0 * dg);
  s.d_cov = (-p2.cov + 8.0 * p1.cov - 8.0 * m1.cov + m2.cov) / (12.0 * dg);
  s.d_cov = 0.5 * (s.d_cov + s.d_cov.transpose()).eval();
  return s;
}

Mat6 coupling_derivative_pattern() {
  Mat6 G = Mat6::Zero();
  G(2, 5) = 1.0;
  G(3, 4) = -1.0;
  G(4, 3) = 1.0;
  G(5, 2) = -1.0;
  return G;
}

std::array<Mat6, 2> drift_mean_derivatives(const SystemParams& p, const Vec6& mean) {
  // With m = (Q + iP)/√2 the Kerr entries are
  //   ℜ± = −γ_m ± 2K QP,
  //   ℑ± = ±(Δ_m + K + 2K(Q² + P²)) − K(Q² − P²).
  const double Q = mean(4), P = mean(5), K = p.K;
  std::array<Mat6, 2> d{Mat6::Zero(), Mat6::Zero()};
  d[0](4, 4) = 2.0 * K * P;
  d[0](5, 5) = -2.0 * K * P;
  d[0](4, 5) = 2.0 * K * Q;
  d[0](5, 4) = -6.0 * K * Q;
  d[1](4, 4) = 2.0 * K * Q;
  d[1](5, 5) = -2.0 * K * Q;
  d[1](4, 5) = 6.0 * K * P;
  d[1](5, 4) = -2.0 * K * P;
  return d;
}

Sensitivity sensitivity_analytic(const SystemParams& p) {
  const SteadyState ss = solve_steady(p);
  const Mat6 A = build_drift(p, ss);
  const Mat6 D = build_diffusion(p);
  const Mat6 V = solve_lyapunov(A, D);
  const Vec6 mu = mean_quadratures(ss);
  const Mat6 G = coupling_derivative_pattern();

  Sensitivity s;
  s.method = DerivativeMethod::analytic;
  // The Jacobian of the mean-field flow in quadratures is A itself.
  s.d_mean = -A.fullPivLu().solve(G * mu);
  const auto dA_dmu = drift_mean_derivatives(p, mu);
  const Mat6 dA = G + dA_dmu[0] * s.d_mean(4) + dA_dmu[1] * s.d_mean(5);
  const Mat6 rhs = dA * V + V * dA.transpose();
  Mat6 dV = solve_lyapunov_general(A, rhs);
  s.d_cov = 0.5 * (dV + dV.transpose());
  return s;
}

Sensitivity sensitivity(const SystemParams& p, DerivativeMethod method) {
  return method == DerivativeMethod::analytic ? sensitivity_analytic(p)
                                              : sensitivity_stencil(p);
}

double gaussian_qfi(const Eigen::MatrixXd& V, const Eigen::VectorXd& d_mean,
                    const Eigen::MatrixXd& d_cov) {
  const Eigen::Index n = V.rows();
  if (n % 2 != 0 || V.cols() != n || d_cov.rows() != n || d_cov.cols() != n ||
      d_mean.size() != n) {
    throw DomainError("gaussian_qfi: dimension mismatch");
  }
  Eigen::MatrixXd Xi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; k += 2) Xi.block(k, k, 2, 2) = symplectic_form_2();

  // Column-major vec: vec(B X C) = (Cᵀ ⊗ B) vec X, and Ξᵀ = −Ξ.
  const Eigen::Index n2 = n * n;
  Eigen::MatrixXd M(n2, n2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      M.block(i * n, j * n, n, n) = 4.0 * V(i, j) * V - Xi(i, j) * Xi;
    }
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(V);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw SingularSystem("gaussian_qfi: covariance is not positive definite");
  }
  const double mean_term = d_mean.dot(ldlt.solve(d_mean));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const Eigen::VectorXd lambda = eig.eigenvalues();
  const Eigen::VectorXd c =
      eig.eigenvectors().transpose() * Eigen::Map<const Eigen::VectorXd>(d_cov.data(), n2);
  const double lmax = lambda.cwiseAbs().maxCoeff();
  const double threshold = 1e-12 * lmax;
  double cov_term = 0.0;
  double dropped = 0.0;
  double smallest = lmax;
  for (Eigen::Index k = 0; k < n2; ++k) {
    smallest = std::min(smallest, std::abs(lambda(k)));
    if (std::abs(lambda(k)) > threshold) {
      cov_term += 2.0 * c(k) * c(k) / lambda(k);
    } else {
      dropped += 2.0 * c(k) * c(k) / threshold;
    }
  }
  const double F = cov_term + mean_term;
  if (dropped > 1e-9 * std::abs(F) && dropped > 0.0) {
    throw NearPureState("gaussian_qfi: sensitivity points along a singular direction", smallest);
  }
  return std::max(F, 0.0);
}

double qfi_global(const GaussianState& state, const Sensitivity& sens) {
  return gaussian_qfi(state.cov, sens.d_mean, sens.d_cov);
}

double qfi_subsystem(const GaussianState& state, const Sensitivity& sens, Mode mode) {
  const int o = quadrature_offset(mode);
  const Mat2 dL = sens.d_cov.block<2, 2>(o, o);
  const Vec2 dd = sens.d_mean.segment<2>(o);
  return gaussian_qfi(state.local(mode), dd, dL);
}

double qcrb(double F, long long N) {
  if (N < 1) throw DomainError("qcrb: N must be at least 1");
  if (!(F > 0.0)) throw ZeroInformation("qcrb: Fisher information is zero");
  return 1.0 / (static_cast<double>(N) * F);
}

FisherReport fisher_report(const GaussianState& state, const Sensitivity& sens) {
  FisherReport r;
  r.qfi_global = qfi_global(state, sens);
  for (int k = 0; k < 3; ++k) {
    r.qfi_sub[k] = qfi_subsystem(state, sens, static_cast<Mode>(k));
    r.ratios[k] = r.qfi_global > 0.0 ? r.qfi_sub[k] / r.qfi_global
                                     : std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

FisherReport fisher_report(const SystemParams& p, DerivativeMethod method) {
  const GaussianState state = steady_gaussian_state(p);
  return fisher_report(state, sensitivity(p, method));
}

}  // namespace magnon
