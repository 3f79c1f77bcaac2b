#pragma once

#include <array>
#include <optional>

#include "magnon_fisher/linalg.hpp"
#include "magnon_fisher/params.hpp"
#include "magnon_fisher/steady.hpp"

namespace magnon {

/// Drift matrix of the linearized quadrature fluctuations.
using DriftMatrix = Mat6;
/// Diagonal diffusion matrix, (2n_k + 1)γ_k on both quadratures of mode k.
using DiffusionMatrix = Mat6;

/// First and second moments of the three-mode Gaussian steady state.
struct GaussianState {
  Vec6 mean = Vec6::Zero();
  Mat6 cov = Mat6::Zero();

  /// L_i, the 2×2 covariance of one mode.
  Mat2 local(Mode mode) const;
  /// C_ij, the 2×2 correlation block between two modes.
  Mat2 correlation(Mode row, Mode col) const;
  Vec2 local_mean(Mode mode) const;
};

/// Λ = [[0, 1], [−1, 0]].
Mat2 symplectic_form_2();
/// Ξ = Λ ⊕ Λ ⊕ Λ.
Mat6 symplectic_form();

/// Quadrature means ⟨Q⟩ = √2 Re⟨o⟩, ⟨P⟩ = √2 Im⟨o⟩.
Vec6 mean_quadratures(const SteadyState& ss);

DriftMatrix build_drift(const SystemParams& p, const SteadyState& ss);
DiffusionMatrix build_diffusion(const SystemParams& p);

/// Solves A X + X Aᵀ = −C for square A of any size through the Kronecker
/// form (I⊗A + A⊗I) vec X = −vec C. A and C are rescaled by max|A_ij| first.
/// Throws SingularSystem when the Kronecker system is rank deficient.
Eigen::MatrixXd solve_lyapunov_general(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C);

/// Steady covariance V with A V + V Aᵀ + D = 0, symmetrized. Throws
/// UnstableDrift when A is not stable.
Mat6 solve_lyapunov(const DriftMatrix& A, const DiffusionMatrix& D);

/// ‖A V + V Aᵀ + D‖_F / ‖D‖_F.
double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& V,
                         const Eigen::MatrixXd& D);

/// Smallest eigenvalue of the Hermitian matrix V + iΞ/2. Non-negative for a
/// physical covariance.
double min_uncertainty_eigenvalue(const Mat6& V);

/// Coefficients α_0..α_6 of det(λ − A) = λ⁶ + α_1 λ⁵ + … + α_6 via the
/// Faddeev–LeVerrier recursion.
std::array<double, 7> char_poly(const Mat6& A);

/// det H¹..H⁶ with H^k_ij = α_{2i−j}, zero for indices outside 0..6.
std::array<double, 6> hurwitz_determinants(const std::array<double, 7>& alpha);

struct StabilityReport {
  bool stable = false;        ///< max Re λ < −10⁻⁹‖A‖_F
  double max_real_eig = 0.0;
  bool hurwitz_ok = false;    ///< all Hurwitz determinants positive
  bool marginal = false;      ///< |max Re λ| ≤ 10⁻⁹‖A‖_F
  std::array<double, 6> hurwitz{};  ///< determinants of the normalized polynomial
  bool agree() const { return marginal || stable == hurwitz_ok; }
};

StabilityReport check_stability(const Mat6& A);

/// Closed-form α_1..α_6 of the symmetric-cavity drift matrix
/// (γ_a1 = γ_a2, Δ_a1 = Δ_a2), written in terms of the Kerr entries ℜ±, ℑ±.
/// Used only as an optional cross-check of char_poly.
std::array<double, 7> closed_form_char_poly(const SystemParams& p, const SteadyState& ss);

struct ClosedFormCheck {
  std::array<double, 7> numeric{};
  std::array<double, 7> closed_form{};
  std::array<double, 7> rel_diff{};  ///< |closed − numeric| / max(|numeric|, scale^k)
  double max_rel_diff = 0.0;
};

/// Compares closed_form_char_poly with char_poly(build_drift(...)). Returns
/// nothing when the cavities are not symmetric.
std::optional<ClosedFormCheck> closed_form_cross_check(const SystemParams& p,
                                                       const SteadyState& ss);

/// Drift, diffusion, stability gate and Lyapunov solve at a steady state.
GaussianState gaussian_state(const SystemParams& p, const SteadyState& ss);

/// solve_steady followed by gaussian_state.
GaussianState steady_gaussian_state(const SystemParams& p);

}  // namespace magnon
