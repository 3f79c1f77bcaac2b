#include "magnon_fisher/normal_modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magnon_fisher/errors.hpp"

namespace magnon {

BogoliubovParams bogoliubov(const SystemParams& p, const SteadyState& ss) {
  const double x = std::norm(ss.m_mean);
  const double delta_eff = p.delta_m + 4.0 * p.K * x;
  const double E2 = delta_eff * delta_eff - 4.0 * x * x * p.K * p.K;
  if (!(E2 > 0.0)) throw DegenerateNormalMode("normal-mode frequency is not real");
  if (delta_eff < 0.0) throw DegenerateNormalMode("negative effective detuning");

  BogoliubovParams b;
  b.E = std::sqrt(E2);
  const double ratio = delta_eff / b.E;
  b.alpha = std::sqrt(0.5 * (ratio + 1.0));
  b.beta = std::sqrt(std::max(0.0, 0.5 * (ratio - 1.0)));
  const cplx s = 2.0 * p.K * ss.m_mean * ss.m_mean;
  double phi = std::atan2(s.imag(), s.real()) + std::numbers::pi;
  if (phi > std::numbers::pi) phi -= 2.0 * std::numbers::pi;
  b.phi = phi;
  return b;
}

HybridModes hybrid_modes(const SystemParams& p) {
  if (p.J < 0.0) throw DomainError("hybrid_modes: J must be non-negative");
  const double d1 = p.delta_a1, d2 = p.delta_a2, J = p.J;
  const double d = d2 - d1;
  const double s = std::hypot(d, 2.0 * J);
  HybridModes h;
  h.omega_plus = 0.5 * (d1 + d2 + s);
  h.omega_minus = 0.5 * (d1 + d2 - s);

  if (J == 0.0 && d > 0.0) {
    h.f = 0.0;
    h.h = -1.0;
  } else if (J == 0.0 && d == 0.0) {
    h.f = 1.0 / std::sqrt(2.0);
    h.h = -1.0 / std::sqrt(2.0);
  } else {
    // u = ω₋ − Δ₁ ≤ 0, computed without cancellation
    const double u = d > 0.0 ? -2.0 * J * J / (d + s) : 0.5 * (d - s);
    const double n = std::hypot(u, J);
    h.f = -u / n;
    h.h = -J / n;
  }
  h.G_plus = -p.g * h.h;
  h.G_minus = h.f * p.g;
  return h;
}

std::vector<double> peak_predictor(const SystemParams& p, const SteadyState& ss) {
  const double x = std::norm(ss.m_mean);
  const double delta_eff = p.delta_m + 4.0 * p.K * x;
  const double E2 = delta_eff * delta_eff - 4.0 * x * x * p.K * p.K;
  if (!(E2 >= 0.0)) throw NoCrossing("normal-mode frequency is not real");
  const double E = std::sqrt(E2);
  std::vector<double> out{E - p.J, E + p.J};
  if (p.J == 0.0) out.pop_back();
  return out;
}

}  // namespace magnon
