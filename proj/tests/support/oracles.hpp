#pragma once

// Independent reference computations shared by unit and acceptance tests.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

// Composite Simpson weights on n (odd) nodes spanning [-half, half].
inline Eigen::VectorXd simpson_weights(int n, double half) {
  const double h = 2.0 * half / (n - 1);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
  return w * h / 3.0;
}

// Fisher information of a d-dimensional Gaussian outcome density
// p(x; g) = N(x; mu(g), S(g)), obtained by integrating (dp/dg)^2 / p
// on a tensor Simpson grid. dp/dg is the analytic derivative of the density.
// Coordinates are whitened, x = mu + C z with S = C C^T, so the grid covers
// +-half standard deviations in every direction.
inline double gaussian_cfi_by_integration(const Eigen::MatrixXd& S, const Eigen::MatrixXd& dS,
                                          const Eigen::VectorXd& dmu, int nodes = 1201,
                                          double half = 12.0) {
  const int d = static_cast<int>(S.rows());
  const Eigen::MatrixXd C = S.llt().matrixL();
  const Eigen::MatrixXd Si = S.inverse();
  const double detS = S.determinant();
  const double dlogdet = (Si * dS).trace();
  const Eigen::VectorXd w = simpson_weights(nodes, half);
  const double h = 2.0 * half / (nodes - 1);
  const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * d) / std::sqrt(detS);

  auto integrand = [&](const Eigen::VectorXd& z) {
    const Eigen::VectorXd y = C * z;  // x - mu
    const double q = y.dot(Si * y);
    const double p = norm * std::exp(-0.5 * q);
    // dp/dg = p [dmu^T S^-1 y + 1/2 y^T S^-1 dS S^-1 y - 1/2 tr(S^-1 dS)]
    const Eigen::VectorXd Siy = Si * y;
    const double dp = p * (dmu.dot(Siy) + 0.5 * Siy.dot(dS * Siy) - 0.5 * dlogdet);
    // dx = |det C| dz
    return p > 0 ? dp * dp / p * std::sqrt(detS) : 0.0;
  };

  double total = 0.0;
  Eigen::VectorXd z(d);
  if (d == 1) {
    for (int i = 0; i < nodes; ++i) {
      z[0] = -half + i * h;
      total += w[i] * integrand(z);
    }
  } else {
    for (int i = 0; i < nodes; ++i) {
      z[0] = -half + i * h;
      for (int j = 0; j < nodes; ++j) {
        z[1] = -half + j * h;
        total += w[i] * w[j] * integrand(z);
      }
    }
  }
  return total;
}

// Steady covariance as the time integral of exp(At) D exp(A^T t), integrated
// with Simpson panels on [0, t_end]. t_end is 40 decay times of the slowest
// mode; the panel count follows the fastest eigenvalue.
inline Eigen::MatrixXd lyapunov_by_time_integral(const Eigen::MatrixXd& A,
                                                 const Eigen::MatrixXd& D) {
  const Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(A);
  double speed = 0.0;
  double slowest = -1e300;
  for (int i = 0; i < A.rows(); ++i) {
    speed = std::max(speed, std::abs(es.eigenvalues()[i]));
    slowest = std::max(slowest, es.eigenvalues()[i].real());
  }
  const double t_end = 40.0 / -slowest;
  const int panels = 2 * static_cast<int>(std::ceil(t_end * speed * 20.0 / 2.0)) + 2;
  const double h = t_end / panels;
  const Eigen::MatrixXd step = (A * h).exp();
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(A.rows(), A.cols());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(A.rows(), A.cols());
  for (int i = 0; i <= panels; ++i) {
    const double wgt = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += wgt * E * D * E.transpose();
    E = step * E;
  }
  return sum * h / 3.0;
}

}  // namespace oracle
