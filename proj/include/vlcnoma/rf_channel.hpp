#pragma once

#include <cstdint>
#include <random>

namespace vlcnoma {

/// One strong-UE -> weak-UE D2D link.
struct RfLink {
  double power_gain = 0.0;  // |g|^2
  double distance = 1.0;    // m
  double fading = 1.0;      // Nakagami shape F >= 0.5
  double pathloss_exponent = 2.0;
};

/// |g|^2 for g ~ Nakagami(F, Omega) with mean power Omega = d^-mu. The squared
/// amplitude is Gamma(shape F, scale Omega / F), sampled directly.
double sample_rf_gain(double distance, double fading, double pathloss_exponent,
                      std::mt19937_64& rng);
double sample_rf_gain(double distance, double fading, double pathloss_exponent,
                      std::uint64_t seed);

RfLink sample_rf_link(double distance, double fading, double pathloss_exponent,
                      std::mt19937_64& rng);

}  // namespace vlcnoma
