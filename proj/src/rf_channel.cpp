#include "vlcnoma/rf_channel.hpp"

#include <cmath>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

double sample_rf_gain(double distance, double fading, double pathloss_exponent,
                      std::mt19937_64& rng) {
  if (!(distance > 0.0)) throw DomainError("sample_rf_gain: distance must be positive");
  if (!(fading >= 0.5)) throw DomainError("sample_rf_gain: Nakagami shape must be >= 0.5");
  const double omega = std::pow(distance, -pathloss_exponent);
  std::gamma_distribution<double> gamma(fading, omega / fading);
  return gamma(rng);
}

double sample_rf_gain(double distance, double fading, double pathloss_exponent,
                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_rf_gain(distance, fading, pathloss_exponent, rng);
}

RfLink sample_rf_link(double distance, double fading, double pathloss_exponent,
                      std::mt19937_64& rng) {
  return {sample_rf_gain(distance, fading, pathloss_exponent, rng), distance, fading,
          pathloss_exponent};
}

}  // namespace vlcnoma
