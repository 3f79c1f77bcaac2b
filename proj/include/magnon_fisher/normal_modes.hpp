#pragma once

#include <vector>

#include "magnon_fisher/params.hpp"
#include "magnon_fisher/steady.hpp"

namespace magnon {

/// Normal magnon mode M = α δm − β* δm† of the Kerr-squeezed magnon.
struct BogoliubovParams {
  double alpha = 1.0;
  double beta = 0.0;  ///< stored non-negative; the sign sits in phi
  double phi = 0.0;   ///< radians, in (−π, π]
  double E = 0.0;     ///< normal-mode frequency ℰ (rad/s)
};

/// ℰ = √(Δ_eff² − 4|⟨m⟩|⁴K²), α = √((Δ_eff/ℰ + 1)/2), β = √((Δ_eff/ℰ − 1)/2),
/// φ = atan2(ℐ, ℛ) + π with ℐ + iℛ taken from 2K⟨m⟩². Throws
/// DegenerateNormalMode when ℰ² ≤ 0 or Δ_eff < 0.
BogoliubovParams bogoliubov(const SystemParams& p, const SteadyState& ss);

/// Hybridized cavity modes A₊ = f a₁ − h a₂, A₋ = h a₁ + f a₂.
struct HybridModes {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double G_plus = 0.0;   ///< −g h
  double G_minus = 0.0;  ///< f g
  double f = 1.0;
  double h = 0.0;
};

HybridModes hybrid_modes(const SystemParams& p);

/// Cavity detunings Δ_a (both cavities) at which ω± crosses ℰ, i.e.
/// Δ_a = ℰ ∓ J, sorted and deduplicated. ℰ is taken at the given steady
/// state. Throws NoCrossing when ℰ is not real.
std::vector<double> peak_predictor(const SystemParams& p, const SteadyState& ss);

}  // namespace magnon
