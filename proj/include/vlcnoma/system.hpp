#pragma once

#include <cstddef>

#include "vlcnoma/precoding.hpp"
#include "vlcnoma/rates.hpp"

namespace vlcnoma {

/// Transmitter, receiver and bandwidth parameters shared by every scheme.
struct SystemParams {
  double p_elec = 0.0;             // W, per AP
  double bandwidth = 20e6;         // B_v, Hz
  double rf_bandwidth = 16e6;      // B_r, Hz
  double noise_psd = 1e-21;        // N_v, W/Hz
  double rf_noise_psd = 1e-21;     // N_r, W/Hz
  double responsivity = 0.58;      // A/W
  double efficiency = 0.6;         // W/A
  double sigma_s2 = 0.0;           // truncated-Gaussian signal power
  double dc_bias = 0.31623;        // A
  double modulation_index = 0.33;  // nu
  double fill_factor = 0.75;
  double thermal_voltage = 0.025;  // V
  double dark_current = 1e-10;     // A
  double r_th = 0.0;               // nat/s
  std::size_t line_search_points = 1000;

  double noise_power() const { return noise_psd * bandwidth; }
  double rf_noise_power() const { return rf_noise_psd * rf_bandwidth; }
  /// (nu I_DC)^2 / 2.
  double max_p_elec() const;
  /// R_p^2 eta^2 P sigma_s^2 / (N_v B_v): SNR scale before channel gains.
  double snr_scale() const;
};

/// D2D relay state: fading power gains and harvested transmit powers.
struct RfState {
  double gain_a = 0.0;
  double gain_b = 0.0;
  double power_a = 0.0;
  double power_b = 0.0;
};

RfState make_rf_state(const ChannelState& ch, double gain_a, double gain_b,
                      const SystemParams& sp);

/// MRC of both relayed copies.
double rf_relay_rate(const RfState& rf, const SystemParams& sp);
/// Only strong UE `k` relays.
double rf_single_relay_rate(const RfState& rf, int k, const SystemParams& sp);

/// ZF-precoded link budget of the CoMP schemes. Throws DegenerateChannelError
/// when H_ab cannot be inverted.
LinkBudget make_link_budget(const ChannelState& ch, const SystemParams& sp, const RfState& rf);

}  // namespace vlcnoma
