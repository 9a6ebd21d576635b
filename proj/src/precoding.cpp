#include "vlcnoma/precoding.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

double induced_inf_norm(const Mat2& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

Precoder zf_precoder(const Mat2& H) {
  if (!H.allFinite()) throw DegenerateChannelError("zf_precoder: non-finite channel matrix");
  const double det = H.determinant();
  const double scale = H.squaredNorm();
  if (!(std::abs(det) >= 1e-15 * scale) || scale == 0.0) {
    std::ostringstream msg;
    msg << "zf_precoder: near-singular strong-UE channel (|det|=" << std::abs(det)
        << ", ||H||_F^2=" << scale << ")";
    throw DegenerateChannelError(msg.str());
  }
  Precoder p;
  p.pinv = H.inverse();
  const double n = induced_inf_norm(p.pinv);
  p.norm_scale = 1.0 / n;
  p.W = p.pinv * p.norm_scale;
  return p;
}

Vec2 effective_weak_channel(const Precoder& p, const Vec2& h_w) { return p.W.transpose() * h_w; }

Vec2 relative_weak_gain(const Precoder& p, const Vec2& h_w) { return p.pinv.transpose() * h_w; }

double amplitude_ratio(const Precoder& p, double alpha1, double alpha2, double p_elec,
                       double modulation_index, double dc_bias, double s_a, double s_b,
                       double s_w) {
  const double s1 = std::sqrt((1.0 - alpha1) * p_elec) * s_a + std::sqrt(alpha1 * p_elec) * s_w;
  const double s2 = std::sqrt((1.0 - alpha2) * p_elec) * s_b + std::sqrt(alpha2 * p_elec) * s_w;
  const Vec2 x = p.W * Vec2(s1, s2);
  const double peak = modulation_index * dc_bias;
  return x.cwiseAbs().maxCoeff() / peak;
}

AmplitudeReport check_amplitude(const Precoder& p, double alpha1, double alpha2, double p_elec,
                                double modulation_index, double dc_bias, std::size_t n_samples,
                                std::uint64_t seed, double tolerance) {
  if (alpha1 < 0 || alpha1 > 1 || alpha2 < 0 || alpha2 > 1)
    throw DomainError("check_amplitude: power fractions must lie in [0,1]");
  // Rounding in sqrt and the 2x2 product can exceed an exactly tight bound by a
  // few ulps; that allowance is not part of the user tolerance.
  const double limit = 1.0 + tolerance + 16.0 * std::numeric_limits<double>::epsilon();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AmplitudeReport rep;
  for (std::size_t n = 0; n < n_samples; ++n) {
    const double sa = u(rng), sb = u(rng), sw = u(rng);
    const double r =
        amplitude_ratio(p, alpha1, alpha2, p_elec, modulation_index, dc_bias, sa, sb, sw);
    rep.max_ratio = std::max(rep.max_ratio, r);
    ++rep.samples;
    if (!(r <= limit)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "peak amplitude violated at sample " << n << ": s=(" << sa << ", " << sb << ", "
          << sw << "), ratio=" << r;
      throw AmplitudeViolation(msg.str());
    }
  }
  return rep;
}

}  // namespace vlcnoma
