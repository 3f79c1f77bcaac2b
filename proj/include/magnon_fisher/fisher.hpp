#pragma once

#include <array>
#include <string>

#include "magnon_fisher/dynamics.hpp"

namespace magnon {

enum class DerivativeMethod { analytic, stencil };

std::string to_string(DerivativeMethod m);
DerivativeMethod parse_derivative_method(const std::string& name);

/// ∂_g of the quadrature means and of the covariance.
struct Sensitivity {
  Vec6 d_mean = Vec6::Zero();
  Mat6 d_cov = Mat6::Zero();
  DerivativeMethod method = DerivativeMethod::analytic;
};

/// Five-point stencil (−f₊₂ + 8f₊₁ − 8f₋₁ + f₋₂)/(12 dg) with dg = dg_rel·g
/// (dg_rel times the largest damping rate when g = 0). Throws
/// StencilCrossesInstability when a shifted point is unstable or multistable.
Sensitivity sensitivity_stencil(const SystemParams& p, double dg_rel = 1e-6);

/// Exact derivative: implicit differentiation of the mean-field equations
/// followed by the differentiated Lyapunov equation
///   A ∂V + ∂V Aᵀ = −(∂A V + V ∂Aᵀ).
Sensitivity sensitivity_analytic(const SystemParams& p);

Sensitivity sensitivity(const SystemParams& p, DerivativeMethod method);

/// ∂A/∂g at fixed means: ±1 at the four coupling positions.
Mat6 coupling_derivative_pattern();

/// ∂A/∂⟨Q_m⟩ and ∂A/∂⟨P_m⟩ through the Kerr entries.
std::array<Mat6, 2> drift_mean_derivatives(const SystemParams& p, const Vec6& mean);

/// Gaussian QFI of an n-mode state (n = 1 or 3 here):
///   F = 2 vec(∂V)ᵀ 𝔐⁻¹ vec(∂V) + ∂μᵀ V⁻¹ ∂μ,
/// where 𝔐 acts as X ↦ 4VXV + ΞXΞ. Eigen-directions of 𝔐 below 10⁻¹² of its
/// largest eigenvalue are dropped; NearPureState is thrown when such a
/// direction carries a non-negligible share of ∂V.
double gaussian_qfi(const Eigen::MatrixXd& V, const Eigen::VectorXd& d_mean,
                    const Eigen::MatrixXd& d_cov);

double qfi_global(const GaussianState& state, const Sensitivity& sens);
double qfi_subsystem(const GaussianState& state, const Sensitivity& sens, Mode mode);

/// 1/(N F). Throws ZeroInformation for F ≤ 0 and DomainError for N < 1.
double qcrb(double F, long long N);

struct FisherReport {
  double qfi_global = 0.0;
  std::array<double, 3> qfi_sub{};  ///< a1, a2, m
  std::array<double, 3> ratios{};   ///< ξ_j = ℱ^j / ℱ_g
  double qcrb(long long N) const { return magnon::qcrb(qfi_global, N); }
};

FisherReport fisher_report(const GaussianState& state, const Sensitivity& sens);

/// Steady state, covariance, sensitivity and all QFIs at one parameter point.
FisherReport fisher_report(const SystemParams& p,
                           DerivativeMethod method = DerivativeMethod::analytic);

}  // namespace magnon
