#include "vlcnoma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::comp_noma: return "comp-noma";
    case Scheme::comp_cnoma: return "comp-cnoma";
    case Scheme::comp_oma: return "comp-oma";
    case Scheme::cnoma: return "cnoma";
    case Scheme::noma: return "noma";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view s) {
  for (auto v : {Scheme::comp_noma, Scheme::comp_cnoma, Scheme::comp_oma, Scheme::cnoma,
                 Scheme::noma})
    if (to_string(v) == s) return v;
  throw ConfigError("unknown scheme '" + std::string(s) + "'");
}

double truncated_gaussian_power(double sigma_d) {
  if (!(sigma_d > 0.0)) throw DomainError("truncated_gaussian_power: sigma_d must be positive");
  const double tail = sigma_d * std::exp(-1.0 / (2.0 * sigma_d * sigma_d)) /
                      std::erf(1.0 / (sigma_d * std::sqrt(2.0)));
  const double power = sigma_d * sigma_d - tail;
  if (!(power > 0.0))
    throw DomainError("truncated_gaussian_power: the closed form is non-positive for sigma_d = " +
                      std::to_string(sigma_d) + " (valid below about 1.228)");
  return power;
}

double gamma_rx(double responsivity, double efficiency, double p_elec, double sigma_s2,
                double norm_scale, double noise_power) {
  const double rpe = responsivity * efficiency;
  return rpe * rpe * p_elec * sigma_s2 * norm_scale * norm_scale / noise_power;
}

double shannon_half(double bandwidth, double snr) {
  return 0.5 * bandwidth * std::log1p(std::max(snr, 0.0));
}

double sic_capacity(double gamma, double bandwidth) {
  return shannon_half(bandwidth, kShapingGain * gamma);
}

double rate_strong_decode_weak(double alpha, double gamma, double bandwidth) {
  // c a / (c (1 - a) + 1/gamma), multiplied through by gamma.
  const double cg = kShapingGain * gamma;
  return shannon_half(bandwidth, cg * alpha / (cg * (1.0 - alpha) + 1.0));
}

double rate_strong_own(double alpha, double gamma, double bandwidth) {
  return shannon_half(bandwidth, kShapingGain * gamma * (1.0 - alpha));
}

double rate_weak_vlc(double alpha1, double alpha2, const Vec2& g, double gamma,
                     double bandwidth) {
  const double cg = kShapingGain * gamma;
  const double amp = g(0) * std::sqrt(alpha1) + g(1) * std::sqrt(alpha2);
  const double interference = g(0) * g(0) * (1.0 - alpha1) + g(1) * g(1) * (1.0 - alpha2);
  return shannon_half(bandwidth, cg * amp * amp / (cg * interference + 1.0));
}

double rate_weak_vl_combined(double alpha1, double alpha2, const Vec2& g, double gamma,
                             double bandwidth) {
  return std::min({rate_strong_decode_weak(alpha1, gamma, bandwidth),
                   rate_weak_vlc(alpha1, alpha2, g, gamma, bandwidth),
                   rate_strong_decode_weak(alpha2, gamma, bandwidth)});
}

double harvested_rf_power(double h1k, double h2k, double responsivity, double efficiency,
                          double dc_bias, double fill_factor, double thermal_voltage,
                          double dark_current) {
  const double i_r = responsivity * efficiency * dc_bias * (h1k + h2k);
  return fill_factor * thermal_voltage * i_r * std::log1p(i_r / dark_current);
}

double rate_weak_rf_link(double gain_a, double gain_b, double power_a, double power_b,
                         double rf_bandwidth, double rf_noise_power) {
  return shannon_half(rf_bandwidth, (gain_a * power_a + gain_b * power_b) / rf_noise_power);
}

double rate_weak_rf_combined(double alpha1, double alpha2, double gamma, double bandwidth,
                             double rf_rate) {
  return std::min({rate_strong_decode_weak(alpha1, gamma, bandwidth), rf_rate,
                   rate_strong_decode_weak(alpha2, gamma, bandwidth)});
}

namespace {

SchemeRates strong_part(Scheme s, double a1, double a2, const LinkBudget& b) {
  SchemeRates r;
  r.scheme = s;
  r.r_a = rate_strong_own(a1, b.gamma_rx, b.bandwidth);
  r.r_b = rate_strong_own(a2, b.gamma_rx, b.bandwidth);
  r.r_a_to_w = rate_strong_decode_weak(a1, b.gamma_rx, b.bandwidth);
  r.r_b_to_w = rate_strong_decode_weak(a2, b.gamma_rx, b.bandwidth);
  return r;
}

void finish(SchemeRates& r) {
  r.r_weak = std::min({r.r_a_to_w, r.r_weak_link, r.r_b_to_w});
  r.sum = r.r_a + r.r_b + r.r_weak;
  r.min = std::min({r.r_a, r.r_b, r.r_weak});
}

}  // namespace

SchemeRates comp_noma_rates(double alpha1, double alpha2, const LinkBudget& b) {
  SchemeRates r = strong_part(Scheme::comp_noma, alpha1, alpha2, b);
  r.r_weak_link = rate_weak_vlc(alpha1, alpha2, b.weak_gain, b.gamma_rx, b.bandwidth);
  finish(r);
  return r;
}

SchemeRates comp_cnoma_rates(double alpha1, double alpha2, const LinkBudget& b) {
  SchemeRates r = strong_part(Scheme::comp_cnoma, alpha1, alpha2, b);
  r.r_weak_link = b.rf_rate;
  finish(r);
  return r;
}

}  // namespace vlcnoma
