#include "magnon_fisher/steady.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "magnon_fisher/errors.hpp"

namespace magnon {

namespace {

constexpr cplx I{0.0, 1.0};

struct ChainCoefficients {
  cplx A1;   // iΔ_a1 + γ_a1
  cplx chi;  // A1 (iΔ_a2 + γ_a2) + J²
  cplx G;    // g² A1 / χ
  double E;  // drive amplitude
};

ChainCoefficients chain(const SystemParams& p) {
  ChainCoefficients c;
  c.A1 = cplx(p.gamma_a1, p.delta_a1);
  c.chi = c.A1 * cplx(p.gamma_a2, p.delta_a2) + p.J * p.J;
  c.G = p.g * p.g * c.A1 / c.chi;
  c.E = drive_amplitude(p.P_l, p.omega_l, p.gamma_a2);
  return c;
}

// Roots of e3 y³ + e2 y² + y − 1 = 0.
std::vector<cplx> scaled_cubic_roots(double e3, double e2) {
  if (e3 == 0.0) {
    if (e2 == 0.0) return {cplx(1.0)};
    // e2 y² + y − 1 = 0, cancellation-free form.
    const double disc = 1.0 + 4.0 * e2;
    if (disc < 0.0) {
      const double s = std::sqrt(-disc);
      return {cplx(-1.0, s) / (2.0 * e2), cplx(-1.0, -s) / (2.0 * e2)};
    }
    const double q = -0.5 * (1.0 + std::sqrt(disc));
    return {cplx(q / e2), cplx(-1.0 / q)};
  }

  // Monic form y³ + a y² + b y + c with y = s z so that the companion
  // matrix entries are O(1).
  const double a = e2 / e3;
  const double b = 1.0 / e3;
  const double c = -1.0 / e3;
  const double s = std::max({std::abs(a), std::sqrt(std::abs(b)), std::cbrt(std::abs(c))});
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(0, 0) = -a / s;
  companion(0, 1) = -b / (s * s);
  companion(0, 2) = -c / (s * s * s);
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  std::vector<cplx> roots;
  for (int k = 0; k < 3; ++k) roots.push_back(s * solver.eigenvalues()(k));

  // The smallest root loses relative accuracy when the other two are huge;
  // recover it from the product of the roots (= 1/e3).
  std::sort(roots.begin(), roots.end(),
            [](cplx l, cplx r) { return std::abs(l) < std::abs(r); });
  if (std::abs(roots[1]) > 0.0 && std::abs(roots[2]) > 0.0) {
    const cplx recovered = (1.0 / e3) / (roots[1] * roots[2]);
    const auto p = [&](cplx y) { return ((e3 * y + e2) * y + 1.0) * y - 1.0; };
    if (std::abs(p(recovered)) < std::abs(p(roots[0]))) roots[0] = recovered;
  }
  return roots;
}

cplx newton_polish(cplx y, double e3, double e2) {
  const auto p = [&](cplx v) { return ((e3 * v + e2) * v + 1.0) * v - 1.0; };
  const auto dp = [&](cplx v) { return (3.0 * e3 * v + 2.0 * e2) * v + 1.0; };
  for (int it = 0; it < 4; ++it) {
    const cplx d = dp(y);
    if (d == 0.0) break;
    const cplx next = y - p(y) / d;
    if (!(std::abs(p(next)) < std::abs(p(y)))) break;
    y = next;
  }
  return y;
}

}  // namespace

std::array<double, 4> magnon_number_cubic(const SystemParams& p) {
  const auto c = chain(p);
  const double b = p.delta_m + p.K + c.G.imag();
  const double d = p.gamma_m + c.G.real();
  const double r = p.g * p.g * c.E * c.E * std::norm(c.A1) / std::norm(c.chi);
  return {4.0 * p.K * p.K, 4.0 * p.K * b, b * b + d * d, -r};
}

SteadyState steady_state_from_magnon_number(const SystemParams& p, double x) {
  const auto c = chain(p);
  const cplx Q = I * (p.delta_m + 2.0 * p.K * x + p.K) + p.gamma_m + c.G;
  SteadyState ss;
  ss.m_mean = -I * p.g * c.E * c.A1 / (Q * c.chi);
  ss.a2_mean = (c.E - I * p.g * ss.m_mean) * c.A1 / c.chi;
  ss.a1_mean = -I * p.J * ss.a2_mean / c.A1;
  ss.m_abs2 = std::norm(ss.m_mean);
  ss.delta_eff = p.delta_m + 4.0 * p.K * ss.m_abs2;
  return ss;
}

std::vector<SteadyState> steady_branches(const SystemParams& p) {
  validate(p);
  const auto coeff = magnon_number_cubic(p);
  const double r = -coeff[3];
  if (r == 0.0) return {steady_state_from_magnon_number(p, 0.0)};

  // Scale x = x0·y with x0 the Kerr-free solution.
  const double x0 = r / coeff[2];
  const double e3 = coeff[0] * x0 * x0 / coeff[2];
  const double e2 = coeff[1] * x0 / coeff[2];

  std::vector<SteadyState> out;
  for (cplx y : scaled_cubic_roots(e3, e2)) {
    y = newton_polish(y, e3, e2);
    if (std::abs(y.imag()) > 1e-8 * (1.0 + std::abs(y.real()))) continue;
    double yr = y.real();
    if (yr < -1e-12) continue;
    yr = std::max(yr, 0.0);
    const double x = x0 * yr;
    SteadyState ss = steady_state_from_magnon_number(p, x);
    const double residual = std::abs(ss.m_abs2 - x) / std::max(x, ss.m_abs2);
    if (!(residual <= 1e-8)) continue;
    out.push_back(ss);
  }
  std::sort(out.begin(), out.end(),
            [](const SteadyState& l, const SteadyState& r) { return l.m_abs2 < r.m_abs2; });
  return out;
}

SteadyState solve_steady(const SystemParams& p) {
  auto branches = steady_branches(p);
  if (branches.empty()) throw NoSteadyState("mean-field cubic has no admissible root");
  if (branches.size() > 1) {
    throw MultistableRegime("mean-field cubic has " + std::to_string(branches.size()) +
                            " admissible roots");
  }
  return branches.front();
}

std::array<double, 3> mean_field_residual(const SystemParams& p, const SteadyState& ss) {
  const auto c = chain(p);
  const cplx A2(p.gamma_a2, p.delta_a2);
  const double x = std::norm(ss.m_mean);
  const cplx Qm = I * (p.delta_m + p.K + 2.0 * p.K * x) + p.gamma_m;
  auto normalised = [](std::initializer_list<cplx> terms) {
    cplx sum = 0.0;
    double scale = 0.0;
    for (cplx t : terms) {
      sum += t;
      scale = std::max(scale, std::abs(t));
    }
    return scale == 0.0 ? 0.0 : std::abs(sum) / scale;
  };
  return {
      normalised({c.A1 * ss.a1_mean, I * p.J * ss.a2_mean}),
      normalised({A2 * ss.a2_mean, I * p.J * ss.a1_mean, I * p.g * ss.m_mean, cplx(-c.E)}),
      normalised({Qm * ss.m_mean, I * p.g * ss.a2_mean}),
  };
}

double default_total_spin() { return total_spin(250e-6, constants::rho_yig); }

LinearizationDiagnostics linearization_check(const SteadyState& ss, double two_S) {
  LinearizationDiagnostics d;
  d.a2_abs2 = std::norm(ss.a2_mean);
  d.m_abs2 = ss.m_abs2;
  d.spin_ratio = two_S > 0.0 ? ss.m_abs2 / two_S : 0.0;
  d.weak_drive = d.a2_abs2 < 100.0;
  d.spin_saturation = d.spin_ratio > 1e-2;
  // An undriven magnon has no meaningful linearization point either.
  if (ss.m_abs2 == 0.0) d.spin_saturation = true;
  return d;
}

}  // namespace magnon
