#include "magnon_fisher/params.hpp"

#include <cmath>
#include <sstream>

#include "magnon_fisher/errors.hpp"

namespace magnon {

using constants::two_pi;

SystemParams baseline() {
  SystemParams p;
  p.P_l = 0.5;
  p.omega_l = two_pi * 10.0e9;
  p.T = 10.0e-3;
  p.gamma_a1 = two_pi * 5.0e6;
  p.gamma_a2 = two_pi * 5.0e6;
  p.gamma_m = two_pi * 40.0e6;
  p.K = two_pi * 2.0e-6;
  p.J = two_pi * 26.0e6;
  p.g = two_pi * 41.0e6;
  set_cavity_detuning(p, two_pi * 40.0e6);
  set_magnon_detuning(p, two_pi * 60.0e6);
  return p;
}

void validate(const SystemParams& p) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(what);
  };
  require(p.gamma_a1 > 0.0, "gamma_a1 must be positive");
  require(p.gamma_a2 > 0.0, "gamma_a2 must be positive");
  require(p.gamma_m > 0.0, "gamma_m must be positive");
  require(p.T >= 0.0, "temperature must be non-negative");
  require(p.P_l >= 0.0, "drive power must be non-negative");
  require(p.omega_l > 0.0, "drive frequency must be positive");
  require(p.omega_a1 > 0.0 && p.omega_a2 > 0.0 && p.omega_m > 0.0,
          "absolute mode frequencies must be positive");
  require(p.J >= 0.0, "tunneling rate must be non-negative");
  for (double v : {p.delta_a1, p.delta_a2, p.delta_m, p.g, p.K}) {
    require(std::isfinite(v), "parameters must be finite");
  }
}

std::vector<std::string> consistency_warnings(const SystemParams& p) {
  std::vector<std::string> out;
  auto check = [&](const char* name, double omega, double delta) {
    const double mismatch = std::abs(omega - p.omega_l - delta);
    if (mismatch > 1e-9 * std::abs(omega)) {
      std::ostringstream os;
      os.precision(10);
      os << "omega_" << name << " - omega_l differs from delta_" << name
         << " by " << mismatch << " rad/s";
      out.push_back(os.str());
    }
  };
  check("a1", p.omega_a1, p.delta_a1);
  check("a2", p.omega_a2, p.delta_a2);
  check("m", p.omega_m, p.delta_m);
  return out;
}

void set_cavity_detuning(SystemParams& p, double delta) {
  p.delta_a1 = delta;
  p.delta_a2 = delta;
  p.omega_a1 = p.omega_l + delta;
  p.omega_a2 = p.omega_l + delta;
}

void set_magnon_detuning(SystemParams& p, double delta) {
  p.delta_m = delta;
  p.omega_m = p.omega_l + delta;
}

double bose_occupancy(double omega, double T) {
  if (!(omega > 0.0)) throw DomainError("bose_occupancy: omega must be positive");
  if (T < 0.0) throw DomainError("bose_occupancy: temperature must be non-negative");
  if (T == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::k_B * T);
  if (x > constants::occupancy_cutoff) return 0.0;
  return 1.0 / std::expm1(x);
}

double drive_amplitude(double P_l, double omega_l, double gamma_a2) {
  if (!(omega_l > 0.0)) throw DomainError("drive_amplitude: omega_l must be positive");
  if (P_l < 0.0 || gamma_a2 < 0.0) {
    throw DomainError("drive_amplitude: power and linewidth must be non-negative");
  }
  return std::sqrt(gamma_a2 * P_l / (constants::hbar * omega_l));
}

double sphere_volume(double diameter) {
  return std::numbers::pi * diameter * diameter * diameter / 6.0;
}

double total_spin_from_volume(double volume, double rho) {
  return 5.0 * rho * volume;
}

double total_spin(double diameter, double rho) {
  if (!(diameter > 0.0) || rho < 0.0) {
    throw DomainError("total_spin: diameter must be positive, rho non-negative");
  }
  return total_spin_from_volume(sphere_volume(diameter), rho);
}

namespace {
void require_material(const MaterialParams& mat) {
  if (!(mat.gamma_e > 0.0 && mat.mu0 > 0.0 && mat.M_b > 0.0 && mat.V_m > 0.0)) {
    throw DomainError("material parameters must be strictly positive");
  }
}
}  // namespace

double kerr_coefficient(const MaterialParams& mat) {
  require_material(mat);
  return mat.mu0 * mat.K_an * mat.gamma_e * mat.gamma_e / (mat.V_m * mat.M_b * mat.M_b);
}

double magnon_frequency(const MaterialParams& mat) {
  require_material(mat);
  const double S = 0.5 * total_spin_from_volume(mat.V_m, mat.rho);
  return mat.gamma_e * mat.H_B - 2.0 * kerr_coefficient(mat) * S;
}

double coupling_from_geometry(const MaterialParams& mat, double omega_a2) {
  require_material(mat);
  if (!(mat.V_a > 0.0) || !(omega_a2 > 0.0)) {
    throw DomainError("coupling_from_geometry: V_a and omega_a2 must be positive");
  }
  const double g_am = std::sqrt(mat.mu0 * mat.gamma_e * mat.gamma_e * omega_a2 / (4.0 * mat.V_a));
  return std::sqrt(total_spin_from_volume(mat.V_m, mat.rho)) * g_am;
}

}  // namespace magnon
