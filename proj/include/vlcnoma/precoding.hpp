#pragma once

#include <cstddef>
#include <cstdint>

#include "vlcnoma/vlc_channel.hpp"

namespace vlcnoma {

/// Induced infinity norm: maximum absolute row sum.
double induced_inf_norm(const Mat2& m);

/// Zero-forcing precoder W = H^-1 / ||H^-1||_inf.
struct Precoder {
  Mat2 W = Mat2::Identity();
  double norm_scale = 1.0;  // 1 / ||H^-1||_inf, so that H W = norm_scale * I
  Mat2 pinv = Mat2::Identity();
};

/// Throws DegenerateChannelError when |det H| < 1e-15 * ||H||_F^2.
Precoder zf_precoder(const Mat2& H);

/// W^T h_w.
Vec2 effective_weak_channel(const Precoder& p, const Vec2& h_w);

/// Weak-UE gains expressed relative to the strong UEs' post-ZF gain:
/// W^T h_w / norm_scale = (H^-1)^T h_w. This is the quantity that multiplies
/// gamma_rx in the weak-UE SINR, since gamma_rx already carries norm_scale^2.
Vec2 relative_weak_gain(const Precoder& p, const Vec2& h_w);

struct AmplitudeReport {
  double max_ratio = 0.0;  // max ||W s||_inf / (nu I_DC)
  std::size_t samples = 0;
};

/// Draws message triples uniformly in [-1, 1]^3, superposes them with
/// (alpha1, alpha2) and checks ||W s||_inf <= nu * I_DC on every sample. The
/// bound is compared with `tolerance` of extra relative slack on top of a
/// few ulps of rounding allowance; a violation throws AmplitudeViolation.
AmplitudeReport check_amplitude(const Precoder& p, double alpha1, double alpha2, double p_elec,
                                double modulation_index, double dc_bias, std::size_t n_samples,
                                std::uint64_t seed, double tolerance = 0.0);

/// ||W s||_inf / (nu I_DC) for one message triple (s_a, s_b, s_w).
double amplitude_ratio(const Precoder& p, double alpha1, double alpha2, double p_elec,
                       double modulation_index, double dc_bias, double s_a, double s_b,
                       double s_w);

}  // namespace vlcnoma
