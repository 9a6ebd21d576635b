#pragma once

#include <string>
#include <string_view>

#include "vlcnoma/vlc_channel.hpp"

namespace vlcnoma {

/// c = 1 / (2 pi e): SNR penalty of amplitude-constrained (truncated
/// Gaussian) signalling.
inline constexpr double kShapingGain = 1.0 / (2.0 * 3.14159265358979323846 * 2.71828182845904523536);

/// All rates in nat/s. Bit/s is a display conversion only.
inline constexpr double kLn2 = 0.69314718055994530942;
inline constexpr double nat_to_bit(double r) { return r / kLn2; }

enum class Scheme { comp_noma, comp_cnoma, comp_oma, cnoma, noma };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

/// Variance of a zero-mean Gaussian with scale sigma_d truncated to [-1, 1]:
/// sigma_d^2 - sigma_d exp(-1 / (2 sigma_d^2)) / erf(1 / (sigma_d sqrt 2)).
/// This is the closed form as used throughout; for sigma_d >> 1 it does not
/// approach the uniform-distribution variance.
double truncated_gaussian_power(double sigma_d);

/// gamma_rx = Rp^2 eta^2 P sigma_s^2 norm_scale^2 / sigma_v^2.
double gamma_rx(double responsivity, double efficiency, double p_elec, double sigma_s2,
                double norm_scale, double noise_power);

/// (B/2) ln(1 + snr).
double shannon_half(double bandwidth, double snr);

/// (B/2) ln(1 + c gamma): the SIC capacity each strong UE splits between
/// decoding the weak message and its own.
double sic_capacity(double gamma, double bandwidth);

/// Strong UE decoding the weak UE's message (weak share alpha).
double rate_strong_decode_weak(double alpha, double gamma, double bandwidth);
/// Strong UE decoding its own message after SIC.
double rate_strong_own(double alpha, double gamma, double bandwidth);

/// Weak UE's direct joint-transmission rate. `weak_gain` is relative to the
/// strong UEs' post-ZF gain (see relative_weak_gain).
double rate_weak_vlc(double alpha1, double alpha2, const Vec2& weak_gain, double gamma,
                     double bandwidth);
/// min(R_a->w, R_w->w, R_b->w).
double rate_weak_vl_combined(double alpha1, double alpha2, const Vec2& weak_gain, double gamma,
                             double bandwidth);

/// Photovoltaic harvest at strong UE k with P^RF = E_k over a unit slot:
///   I_r = Rp eta I_DC (h_1k + h_2k),  E = f V_t I_r ln(1 + I_r / I_0).
double harvested_rf_power(double h1k, double h2k, double responsivity, double efficiency,
                          double dc_bias, double fill_factor, double thermal_voltage,
                          double dark_current);

/// MRC of both relayed copies: (B_r/2) ln(1 + (|g_a|^2 P_a + |g_b|^2 P_b) / sigma_r^2).
double rate_weak_rf_link(double gain_a, double gain_b, double power_a, double power_b,
                         double rf_bandwidth, double rf_noise_power);
/// min(R_a->w, R_rf, R_b->w).
double rate_weak_rf_combined(double alpha1, double alpha2, double gamma, double bandwidth,
                             double rf_rate);

/// Scalar quantities the CoMP power-allocation problems depend on.
struct LinkBudget {
  double gamma_rx = 0.0;
  double bandwidth = 20e6;
  Vec2 weak_gain = Vec2::Zero();  // (H^-1)^T h_w
  double rf_rate = 0.0;           // R^RF_{a,b->w}
  double rf_bandwidth = 16e6;
  // Diagnostics.
  Vec2 weak_channel = Vec2::Zero();  // W^T h_w
  double norm_scale = 1.0;
  double sigma_s2 = 0.0;
  double noise_power = 0.0;
  double p_elec = 0.0;
};

/// Per-UE and aggregate rates of one scheme on one realization.
struct SchemeRates {
  Scheme scheme = Scheme::comp_noma;
  double r_a = 0.0;
  double r_b = 0.0;
  double r_a_to_w = 0.0;
  double r_b_to_w = 0.0;
  double r_weak_link = 0.0;  // direct VLC link (NOMA) or RF relay link (C-NOMA)
  double r_weak = 0.0;       // delivered weak-UE rate
  double sum = 0.0;
  double min = 0.0;
};

SchemeRates comp_noma_rates(double alpha1, double alpha2, const LinkBudget& b);
SchemeRates comp_cnoma_rates(double alpha1, double alpha2, const LinkBudget& b);

}  // namespace vlcnoma
