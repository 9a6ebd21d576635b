#include "vlcnoma/baselines.hpp"

#include <algorithm>
#include <string>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

std::string_view to_string(Objective o) { return o == Objective::sum ? "sum" : "min"; }

Objective parse_objective(std::string_view s) {
  if (s == "sum") return Objective::sum;
  if (s == "min") return Objective::min;
  throw ConfigError("unknown objective '" + std::string(s) + "'");
}

namespace {

bool meets_qos(const SchemeRates& r, double r_th) {
  return r_th <= 0.0 || (r.r_a >= r_th && r.r_b >= r_th && r.r_weak >= r_th);
}

double objective_value(const SchemeRates& r, Objective obj) {
  return obj == Objective::sum ? r.sum : r.min;
}

}  // namespace

SchemeOutcome comp_oma_rates(const ChannelState& ch, const SystemParams& sp, Objective obj) {
  SystemParams half = sp;
  half.bandwidth = 0.5 * sp.bandwidth;
  const double scale = half.snr_scale();
  const auto rate = [&](double h) { return sic_capacity(scale * h * h, half.bandwidth); };

  SchemeOutcome out;
  SchemeRates& r = out.rates;
  r.scheme = Scheme::comp_oma;
  r.r_a = rate(ch.strong[0][0].total());
  r.r_b = rate(ch.strong[1][1].total());
  r.r_weak_link = rate(ch.weak[0].total() + ch.weak[1].total());
  r.r_weak = r.r_weak_link;
  r.sum = r.r_a + r.r_b + r.r_weak;
  r.min = std::min({r.r_a, r.r_b, r.r_weak});
  out.feasible = obj == Objective::min || meets_qos(r, sp.r_th);
  out.objective = out.feasible ? objective_value(r, obj) : 0.0;
  return out;
}

int weak_association(const ChannelState& ch) {
  return ch.weak[1].total() > ch.weak[0].total() ? 1 : 0;
}

SchemeRates uncoordinated_rates(const ChannelState& ch, const SystemParams& sp, double alpha,
                                double relay_rate) {
  const int j = weak_association(ch);  // serving cell of the weak UE
  const int o = 1 - j;
  const double cg = kShapingGain * sp.snr_scale();
  const double b = sp.bandwidth;

  // Strong UE k sits in cell k: own AP k, interfering AP 1 - k.
  const double own_j = ch.strong[j][j].total();
  const double ici_j = ch.strong[j][o].total();
  const double own_o = ch.strong[o][o].total();
  const double ici_o = ch.strong[o][j].total();
  const double w_j = ch.weak[j].total();
  const double w_o = ch.weak[o].total();

  const double noise_j = cg * ici_j * ici_j + 1.0;
  const double decode = shannon_half(b, cg * own_j * own_j * alpha /
                                            (cg * own_j * own_j * (1.0 - alpha) + noise_j));
  const double own = shannon_half(b, cg * own_j * own_j * (1.0 - alpha) / noise_j);
  const double other = shannon_half(b, cg * own_o * own_o / (cg * ici_o * ici_o + 1.0));

  SchemeRates r;
  double link;
  if (relay_rate < 0.0) {
    r.scheme = Scheme::noma;
    link = shannon_half(b, cg * w_j * w_j * alpha /
                               (cg * w_j * w_j * (1.0 - alpha) + cg * w_o * w_o + 1.0));
  } else {
    r.scheme = Scheme::cnoma;
    link = relay_rate;
  }
  double& strong_j = j == 0 ? r.r_a : r.r_b;
  double& strong_o = j == 0 ? r.r_b : r.r_a;
  double& to_w_j = j == 0 ? r.r_a_to_w : r.r_b_to_w;
  strong_j = own;
  strong_o = other;
  to_w_j = decode;
  r.r_weak_link = link;
  r.r_weak = std::min(decode, link);
  r.sum = r.r_a + r.r_b + r.r_weak;
  r.min = std::min({r.r_a, r.r_b, r.r_weak});
  return r;
}

namespace {

SchemeOutcome line_search(const ChannelState& ch, const SystemParams& sp, double relay_rate,
                          Objective obj) {
  const std::size_t k = std::max<std::size_t>(sp.line_search_points, 2);
  SchemeOutcome best;
  best.rates = uncoordinated_rates(ch, sp, 0.0, relay_rate);
  double best_obj = -1.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double alpha = i + 1 == k ? 1.0 : static_cast<double>(i) / static_cast<double>(k - 1);
    const SchemeRates r = uncoordinated_rates(ch, sp, alpha, relay_rate);
    if (obj == Objective::sum && !meets_qos(r, sp.r_th)) continue;
    const double v = objective_value(r, obj);
    if (v > best_obj) {
      best_obj = v;
      best.rates = r;
      best.alpha1 = weak_association(ch) == 0 ? alpha : 0.0;
      best.alpha2 = weak_association(ch) == 1 ? alpha : 0.0;
    }
  }
  if (best_obj >= 0.0) {
    best.feasible = true;
    best.objective = best_obj;
  }
  return best;
}

}  // namespace

SchemeOutcome noma_rates(const ChannelState& ch, const SystemParams& sp, Objective obj) {
  return line_search(ch, sp, -1.0, obj);
}

SchemeOutcome cnoma_rates(const ChannelState& ch, const SystemParams& sp, const RfState& rf,
                          Objective obj) {
  return line_search(ch, sp, rf_single_relay_rate(rf, weak_association(ch), sp), obj);
}

}  // namespace vlcnoma
