#pragma once

#include <array>
#include <complex>
#include <vector>

#include "magnon_fisher/params.hpp"

namespace magnon {

using cplx = std::complex<double>;

/// Mean-field steady state of the three driven modes.
struct SteadyState {
  cplx a1_mean;
  cplx a2_mean;
  cplx m_mean;
  double m_abs2 = 0.0;     ///< |⟨m⟩|²
  double delta_eff = 0.0;  ///< Δ_m + 4K|⟨m⟩|²
};

/// Coefficients (c3, c2, c1, c0) of the real cubic
///   4K² x³ + 4K b x² + (b² + c²) x − r = 0
/// satisfied by the mean magnon number x = |⟨m⟩|², with
/// A₁ = iΔ_a1 + γ_a1, χ = A₁(iΔ_a2 + γ_a2) + J², G = g²A₁/χ,
/// b = Δ_m + K + Im G, c = γ_m + Re G and r = g²E_l²|A₁|²/|χ|².
std::array<double, 4> magnon_number_cubic(const SystemParams& p);

/// Builds the full steady state on the branch with mean magnon number x by
/// back-substitution into the mean-field equations.
SteadyState steady_state_from_magnon_number(const SystemParams& p, double x);

/// All admissible (real, non-negative, self-consistent) steady-state
/// branches, sorted by increasing |⟨m⟩|².
std::vector<SteadyState> steady_branches(const SystemParams& p);

/// The unique steady state. Throws MultistableRegime when several branches
/// coexist and NoSteadyState when none is admissible.
SteadyState solve_steady(const SystemParams& p);

/// Right-hand side residual of the three mean-field equations, each
/// normalised by the magnitude of its largest term.
std::array<double, 3> mean_field_residual(const SystemParams& p, const SteadyState& ss);

struct LinearizationDiagnostics {
  double a2_abs2 = 0.0;
  double m_abs2 = 0.0;
  double spin_ratio = 0.0;  ///< m_abs2 / 2S
  bool weak_drive = false;       ///< |⟨a2⟩|² < 100
  bool spin_saturation = false;  ///< m_abs2 / 2S > 10⁻²
  bool ok() const { return !weak_drive && !spin_saturation; }
};

/// 2S of the 250 μm YIG sphere used as the default reference.
double default_total_spin();

LinearizationDiagnostics linearization_check(const SteadyState& ss,
                                             double two_S = default_total_spin());

}  // namespace magnon
