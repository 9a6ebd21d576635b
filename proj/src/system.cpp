#include "vlcnoma/system.hpp"

namespace vlcnoma {

double SystemParams::max_p_elec() const {
  const double a = modulation_index * dc_bias;
  return 0.5 * a * a;
}

double SystemParams::snr_scale() const {
  return gamma_rx(responsivity, efficiency, p_elec, sigma_s2, 1.0, noise_power());
}

RfState make_rf_state(const ChannelState& ch, double gain_a, double gain_b,
                      const SystemParams& sp) {
  RfState rf;
  rf.gain_a = gain_a;
  rf.gain_b = gain_b;
  const auto harvest = [&](int k) {
    return harvested_rf_power(ch.strong[k][0].total(), ch.strong[k][1].total(), sp.responsivity,
                              sp.efficiency, sp.dc_bias, sp.fill_factor, sp.thermal_voltage,
                              sp.dark_current);
  };
  rf.power_a = harvest(0);
  rf.power_b = harvest(1);
  return rf;
}

double rf_relay_rate(const RfState& rf, const SystemParams& sp) {
  return rate_weak_rf_link(rf.gain_a, rf.gain_b, rf.power_a, rf.power_b, sp.rf_bandwidth,
                           sp.rf_noise_power());
}

double rf_single_relay_rate(const RfState& rf, int k, const SystemParams& sp) {
  return k == 0 ? rate_weak_rf_link(rf.gain_a, 0.0, rf.power_a, 0.0, sp.rf_bandwidth,
                                    sp.rf_noise_power())
                : rate_weak_rf_link(0.0, rf.gain_b, 0.0, rf.power_b, sp.rf_bandwidth,
                                    sp.rf_noise_power());
}

LinkBudget make_link_budget(const ChannelState& ch, const SystemParams& sp, const RfState& rf) {
  const Precoder pre = zf_precoder(ch.h_ab());
  LinkBudget b;
  b.bandwidth = sp.bandwidth;
  b.rf_bandwidth = sp.rf_bandwidth;
  b.norm_scale = pre.norm_scale;
  b.sigma_s2 = sp.sigma_s2;
  b.noise_power = sp.noise_power();
  b.p_elec = sp.p_elec;
  b.gamma_rx = gamma_rx(sp.responsivity, sp.efficiency, sp.p_elec, sp.sigma_s2, pre.norm_scale,
                        b.noise_power);
  b.weak_channel = effective_weak_channel(pre, ch.h_w());
  b.weak_gain = relative_weak_gain(pre, ch.h_w());
  b.rf_rate = rf_relay_rate(rf, sp);
  return b;
}

}  // namespace vlcnoma
