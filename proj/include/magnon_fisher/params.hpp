#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace magnon {

namespace constants {
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;  // J s (CODATA 2018)
inline constexpr double k_B = 1.380649e-23;      // J/K (exact)
inline constexpr double mu0 = 1.25663706212e-6;  // N/A^2 (CODATA 2018)
/// Electron gyromagnetic ratio, γ_e/2π = 28 GHz/T.
inline constexpr double gamma_e = two_pi * 28.0e9;  // rad/(s T)
/// YIG spin density.
inline constexpr double rho_yig = 4.22e27;  // 1/m^3
/// Above this value of ħω/k_BT the Bose occupancy is reported as exactly 0.
inline constexpr double occupancy_cutoff = 700.0;
}  // namespace constants

/// Physical inputs of the double-cavity magnon system. Every rate,
/// detuning and frequency is an angular frequency in rad/s.
struct SystemParams {
  // Absolute mode frequencies; only used for thermal occupancies.
  double omega_a1 = 0.0;
  double omega_a2 = 0.0;
  double omega_m = 0.0;
  // Detunings from the drive, Δ_i = ω_i − ω_l.
  double delta_a1 = 0.0;
  double delta_a2 = 0.0;
  double delta_m = 0.0;
  // Total decay rates.
  double gamma_a1 = 0.0;
  double gamma_a2 = 0.0;
  double gamma_m = 0.0;
  double J = 0.0;  ///< photon tunneling rate
  double g = 0.0;  ///< photon–magnon coupling (the estimated parameter)
  double K = 0.0;  ///< magnon Kerr coefficient
  double P_l = 0.0;      ///< drive power (W)
  double omega_l = 0.0;  ///< drive frequency
  double T = 0.0;        ///< bath temperature (K)
};

/// YIG sphere and cavity constants feeding the closed-form magnon
/// frequency, Kerr coefficient and coupling.
struct MaterialParams {
  double gamma_e = constants::gamma_e;  ///< rad/(s T)
  double mu0 = constants::mu0;
  double K_an = 0.0;  ///< first-order anisotropy constant
  double M_b = 0.0;   ///< saturation magnetization
  double V_m = 0.0;   ///< sphere volume (m^3)
  double V_a = 0.0;   ///< cavity-2 volume (m^3)
  double rho = constants::rho_yig;
  double H_B = 0.0;  ///< bias field (T)
};

/// Parameter set of the reference working point: P_l = 500 mW,
/// ω_l = 2π×10 GHz, T = 10 mK, γ_a = 2π×5 MHz, γ_m = 2π×40 MHz,
/// Δ_a = 2π×40 MHz, Δ_m = 2π×60 MHz, K = 2π×2 μHz, J = 2π×26 MHz,
/// g = 2π×41 MHz. Absolute frequencies are set to ω_l + Δ_i.
SystemParams baseline();

/// Throws DomainError when a hard invariant is violated (non-positive
/// damping, negative temperature or power, non-positive drive frequency or
/// mode frequency).
void validate(const SystemParams& p);

/// Soft checks: returns one message per detuning that disagrees with
/// ω_i − ω_l by more than 1 part in 10⁹ of ω_i.
std::vector<std::string> consistency_warnings(const SystemParams& p);

/// Sets Δ_a1 = Δ_a2 = delta and moves both absolute cavity frequencies
/// along with it.
void set_cavity_detuning(SystemParams& p, double delta);
void set_magnon_detuning(SystemParams& p, double delta);

/// γ_a2 = γ⁰ + γ^ex.
inline double total_linewidth(double intrinsic, double external) {
  return intrinsic + external;
}

/// Bose–Einstein occupancy 1/(exp(ħω/k_BT) − 1). Exactly 0 at T = 0 or
/// once ħω/k_BT exceeds 700.
double bose_occupancy(double omega, double T);

/// E_l = √(γ_a2 P_l / (ħ ω_l)), in rad/s.
double drive_amplitude(double P_l, double omega_l, double gamma_a2);

/// Returns 2S = 5ρ·(πd³/6), twice the total spin of a sphere of diameter d.
double total_spin(double diameter, double rho);

/// 2S for an arbitrary magnet volume.
double total_spin_from_volume(double volume, double rho);

double sphere_volume(double diameter);

/// ω_m = γ_e H_B − 2 μ0 K_an γ_e² S / (V_m M_b²).
double magnon_frequency(const MaterialParams& mat);

/// K = μ0 K_an γ_e² / (V_m M_b²).
double kerr_coefficient(const MaterialParams& mat);

/// g = √(2S)·g_am with g_am = √(μ0 γ_e² ω_a2 / (4 V_a)).
double coupling_from_geometry(const MaterialParams& mat, double omega_a2);

}  // namespace magnon
