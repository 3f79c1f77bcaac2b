#pragma once

#include <string>

#include "magnon_fisher/fisher.hpp"

namespace magnon {

enum class MeasurementKind { HomodyneQ, HomodyneP, Heterodyne, GeneralGaussian };

std::string to_string(MeasurementKind k);
/// Accepts the CLI names hom-q, hom-p, het and ogm (ogm maps to GeneralGaussian).
MeasurementKind parse_measurement(const std::string& name);

/// Single-mode Gaussian measurement. For GeneralGaussian the measurement
/// covariance is σ_M = R(θ) diag(e^{−2r}, e^{2r}) R(θ)ᵀ, so r → +∞ at θ = 0
/// is homodyne detection of Q.
struct MeasurementSpec {
  MeasurementKind kind = MeasurementKind::Heterodyne;
  double theta = 0.0;
  double r = 0.0;

  static MeasurementSpec homodyne_q() { return {MeasurementKind::HomodyneQ, 0.0, 0.0}; }
  static MeasurementSpec homodyne_p() { return {MeasurementKind::HomodyneP, 0.0, 0.0}; }
  static MeasurementSpec heterodyne() { return {MeasurementKind::Heterodyne, 0.0, 0.0}; }
  static MeasurementSpec general(double theta, double r) {
    return {MeasurementKind::GeneralGaussian, theta, r};
  }
  /// σ_M for GeneralGaussian (𝟙₂ for Heterodyne).
  Mat2 covariance() const;
};

/// Reduced single-mode data: covariance L, mean d and their g-derivatives.
struct LocalState {
  Mat2 L = Mat2::Identity();
  Vec2 d = Vec2::Zero();
  Mat2 dL = Mat2::Zero();
  Vec2 dd = Vec2::Zero();
};

LocalState local_state(const GaussianState& state, const Sensitivity& sens, Mode mode);

/// F = [2V_kk (∂μ_k)² + (∂V_kk)²] / (2V_kk²) for one quadrature.
double cfi_quadrature(double v, double dv, double dmu);
/// Homodyne CFI for the quadrature with index k (0..5 in Q_a1..P_m order).
double cfi_homodyne(const GaussianState& state, const Sensitivity& sens, int k);
/// Homodyne along the unit vector (cos θ, sin θ) of a single mode.
double cfi_rotated_homodyne(const LocalState& s, double theta);

/// F = ∂dᵀ(σ + σ_M)⁻¹∂d + ½Tr[((σ + σ_M)⁻¹∂σ)²].
double cfi_gaussian(const LocalState& s, const Mat2& sigma_M);
/// Same for σ_M = R(θ) diag(e^{−2r}, e^{2r}) R(θ)ᵀ, evaluated in the rotated frame.
double cfi_gaussian(const LocalState& s, double theta, double r);
double cfi_gaussian(const GaussianState& state, const Sensitivity& sens, Mode mode,
                    const MeasurementSpec& spec);

/// Heterodyne with ℵ = L + 𝟙₂. Throws SingularAleph if ℵ is singular.
double cfi_heterodyne(const LocalState& s);
double cfi_heterodyne(const GaussianState& state, const Sensitivity& sens, Mode mode);

struct OgmOptions {
  double r_max = 12.0;
  double diameter_tol = 1e-8;
};

struct OgmResult {
  double F = 0.0;
  MeasurementSpec spec;
  /// Optimum sits on |r| = r_max, i.e. a homodyne-type limit. The returned F
  /// is then the exact rotated-homodyne value.
  bool boundary_maximum = false;
  /// Best value found from each of the 16 grid seeds.
  std::vector<double> restart_values;
};

/// Maximizes the CFI over pure single-mode Gaussian measurements (θ, r).
OgmResult optimal_gaussian(const LocalState& s, const OgmOptions& opt = {});
OgmResult optimal_gaussian(const GaussianState& state, const Sensitivity& sens, Mode mode,
                           const OgmOptions& opt = {});

/// Dispatch used by the CLI and sweeps; GeneralGaussian means the optimum.
double cfi(const GaussianState& state, const Sensitivity& sens, Mode mode, MeasurementKind kind);

}  // namespace magnon
