#include "vlcnoma/allocator.hpp"

#include <algorithm>
#include <cmath>

#include "vlcnoma/error.hpp"
#include "vlcnoma/format.hpp"

namespace vlcnoma {

std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::p1: return "P1";
    case Problem::p2: return "P2";
    case Problem::p3: return "P3";
    case Problem::p4: return "P4";
  }
  return "?";
}

Thresholds thresholds(double r_th, double vlc_bandwidth, double rf_bandwidth) {
  return {std::expm1(2.0 * r_th / vlc_bandwidth), std::expm1(2.0 * r_th / rf_bandwidth)};
}

double FeasibilityBounds::alpha_min_clamped() const { return std::clamp(alpha_min, 0.0, 1.0); }
double FeasibilityBounds::alpha_max_clamped() const { return std::clamp(alpha_max, 0.0, 1.0); }

FeasibilityBounds bounds(double t_v, double gamma, double t_r) {
  FeasibilityBounds b;
  b.t_v = t_v;
  b.t_r = t_r;
  const double x = kShapingGain * gamma;
  if (t_v == 0.0) {
    b.alpha_min = 0.0;
    b.alpha_max = 1.0;
  } else {
    b.alpha_max = 1.0 - t_v / x;
    b.alpha_min = t_v * (x + 1.0) / (x * (1.0 + t_v));
  }
  const double s = std::sqrt(x + 1.0);
  b.alpha0 = s / (s + 1.0);  // equal to ((x+1) - s) / x
  return b;
}

double g_metric(double alpha1, double alpha2, const Vec2& h, double t_v, double gamma,
                double cross_coefficient) {
  const double c = kShapingGain;
  return c * (1.0 + t_v) * h(0) * h(0) * alpha1 + c * (1.0 + t_v) * h(1) * h(1) * alpha2 +
         cross_coefficient * c * h(0) * h(1) * std::sqrt(alpha1 * alpha2) -
         t_v * (c * h(0) * h(0) + c * h(1) * h(1) + 1.0 / gamma);
}

FeasibilityBounds Instance::feasibility_bounds() const {
  const Thresholds t = thresholds(r_th, budget.bandwidth, budget.rf_bandwidth);
  return bounds(t.t_v, budget.gamma_rx, t.t_r);
}

bool feasibility_p1(const FeasibilityBounds& b, const Vec2& h, double gamma) {
  if (!b.nonempty()) return false;
  const double lo = b.alpha_min, hi = b.alpha_max;
  double best = g_metric(hi, hi, h, b.t_v, gamma);
  if (h(0) * h(1) < 0.0) {
    best = std::max({best, g_metric(lo, hi, h, b.t_v, gamma), g_metric(hi, lo, h, b.t_v, gamma),
                     g_metric(lo, lo, h, b.t_v, gamma)});
  }
  return best >= 0.0;
}

bool feasibility_p2(const FeasibilityBounds& b, double rf_rate, double r_th) {
  return b.nonempty() && rf_rate >= r_th;
}

std::optional<double> min_alpha2_for_g(double alpha1, const FeasibilityBounds& b, const Vec2& h,
                                       double gamma) {
  const double c = kShapingGain;
  const double t = b.t_v;
  const double c1 = c * (1.0 + t) * h(1) * h(1);
  const double c2 = 2.0 * c * h(0) * h(1) * std::sqrt(alpha1);
  const double c3 =
      c * (1.0 + t) * h(0) * h(0) * alpha1 - t * (c * h(0) * h(0) + c * h(1) * h(1) + 1.0 / gamma);
  const double lo = std::sqrt(std::max(b.alpha_min, 0.0));
  const double hi = std::sqrt(std::max(b.alpha_max, 0.0));

  if (c1 == 0.0) {
    // No dependence on alpha2: the constraint holds on the whole segment or nowhere.
    if (c2 == 0.0) return c3 >= 0.0 ? std::optional<double>(b.alpha_min) : std::nullopt;
    const double root = -c3 / c2;
    if (c2 > 0.0) {
      if (root <= lo) return b.alpha_min;
      if (root <= hi) return root * root;
      return std::nullopt;
    }
    return root >= lo ? std::optional<double>(b.alpha_min) : std::nullopt;
  }

  const double delta = c2 * c2 - 4.0 * c1 * c3;
  if (delta <= 0.0) return b.alpha_min;
  const double sq = std::sqrt(delta);
  // Cancellation-free pair of roots.
  const double q = -0.5 * (c2 + std::copysign(sq, c2));
  double beta1 = q / c1;
  double beta2 = q != 0.0 ? c3 / q : -beta1;
  if (beta1 > beta2) std::swap(beta1, beta2);

  if (beta1 <= lo && hi <= beta2) return std::nullopt;
  if (beta1 <= lo && lo <= beta2 && beta2 <= hi) {
    double a2 = beta2 * beta2;
    // Land on the satisfied side of the root despite rounding.
    for (int i = 0; i < 8 && g_metric(alpha1, a2, h, t, gamma) < 0.0; ++i)
      a2 = std::nextafter(a2, 2.0);
    return std::min(a2, b.alpha_max);
  }
  return b.alpha_min;
}

namespace {

bool meets(double rate, double r_th) {
  return r_th <= 0.0 || rate >= r_th * (1.0 - kConstraintRelTol);
}

double five_arm_min(const SchemeRates& r) {
  return std::min({r.r_a, r.r_b, r.r_a_to_w, r.r_b_to_w, r.r_weak_link});
}

}  // namespace

Evaluation evaluate(Problem p, const Instance& inst, double a1, double a2) {
  const bool in_box = a1 >= 0.0 && a1 <= 1.0 && a2 >= 0.0 && a2 <= 1.0;
  Evaluation e;
  switch (p) {
    case Problem::p1: {
      const SchemeRates r = comp_noma_rates(a1, a2, inst.budget);
      e.objective = r.sum;
      e.feasible = in_box && meets(r.r_a, inst.r_th) && meets(r.r_b, inst.r_th) &&
                   meets(r.r_a_to_w, inst.r_th) && meets(r.r_b_to_w, inst.r_th) &&
                   meets(r.r_weak_link, inst.r_th);
      break;
    }
    case Problem::p2: {
      const SchemeRates r = comp_cnoma_rates(a1, a2, inst.budget);
      e.objective = r.sum;
      e.feasible = in_box && meets(r.r_a, inst.r_th) && meets(r.r_b, inst.r_th) &&
                   meets(r.r_a_to_w, inst.r_th) && meets(r.r_b_to_w, inst.r_th) &&
                   meets(r.r_weak_link, inst.r_th);
      break;
    }
    case Problem::p3:
      e.objective = five_arm_min(comp_noma_rates(a1, a2, inst.budget));
      e.feasible = in_box;
      break;
    case Problem::p4:
      e.objective = five_arm_min(comp_cnoma_rates(a1, a2, inst.budget));
      e.feasible = in_box;
      break;
  }
  return e;
}

namespace {

/// Golden-section search for a maximizer of f on [a, b].
template <class F>
double golden_max(const F& f, double a, double b) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-9) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? x1 : x2;
}

}  // namespace

PowerAllocation solve_p1(const Instance& inst, std::size_t k) {
  if (k < 2) throw DomainError("solve_p1: need at least 2 line-search points");
  const LinkBudget& lb = inst.budget;
  const FeasibilityBounds b = inst.feasibility_bounds();
  PowerAllocation best;
  best.tag = "P1";
  if (!feasibility_p1(b, lb.weak_gain, lb.gamma_rx)) return best;

  const auto grid = [&](std::size_t i) {
    return i + 1 == k ? b.alpha_max
                      : b.alpha_min + (b.alpha_max - b.alpha_min) * static_cast<double>(i) /
                                          static_cast<double>(k - 1);
  };
  const auto value = [&](double a1) {
    const auto a2 = min_alpha2_for_g(a1, b, lb.weak_gain, lb.gamma_rx);
    return a2 ? comp_noma_rates(a1, *a2, lb).sum : -1.0;
  };
  double best_obj = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double obj = value(grid(i));
    if (obj > best_obj) {
      best_obj = obj;
      best_i = i;
    }
  }
  if (best_obj < 0.0) return best;
  best.alpha1 = grid(best_i);
  // Polish alpha1 inside the neighbouring cells; this also locates the edge
  // of the feasible alpha1 range when the optimum sits on it.
  const double polished =
      golden_max(value, grid(best_i == 0 ? 0 : best_i - 1), grid(std::min(best_i + 1, k - 1)));
  if (const double v = value(polished); v > best_obj) {
    best_obj = v;
    best.alpha1 = polished;
  }
  best.alpha2 = *min_alpha2_for_g(best.alpha1, b, lb.weak_gain, lb.gamma_rx);
  best.objective = best_obj;
  best.feasible = true;
  return best;
}

PowerAllocation solve_p2(const Instance& inst) {
  const FeasibilityBounds b = inst.feasibility_bounds();
  PowerAllocation out;
  out.tag = "P2";
  if (!feasibility_p2(b, inst.budget.rf_rate, inst.r_th)) return out;
  out.alpha1 = out.alpha2 = b.alpha_min;
  out.objective = comp_cnoma_rates(b.alpha_min, b.alpha_min, inst.budget).sum;
  out.feasible = true;
  return out;
}

namespace {

/// Smallest alpha2 in [lo, 1] with R_w->w(alpha1, alpha2) >= R_b(alpha2);
/// valid when both weak gains are non-negative (the difference is monotone).
double p3_inner_monotone(double alpha1, double lo, const LinkBudget& lb) {
  const auto diff = [&](double a2) {
    return rate_weak_vlc(alpha1, a2, lb.weak_gain, lb.gamma_rx, lb.bandwidth) -
           rate_strong_own(a2, lb.gamma_rx, lb.bandwidth);
  };
  if (diff(lo) >= 0.0) return lo;
  double left = lo, right = 1.0;
  while (right - left > 1e-9) {
    const double mid = 0.5 * (left + right);
    if (diff(mid) >= 0.0)
      right = mid;
    else
      left = mid;
  }
  return right;
}

/// Maximizer of the five-arm minimum over alpha2 in [lo, 1] by a coarse scan
/// and golden-section refinement around the best scan point.
double p3_inner_scan(double alpha1, double lo, const LinkBudget& lb) {
  const auto f = [&](double a2) { return five_arm_min(comp_noma_rates(alpha1, a2, lb)); };
  constexpr int kScan = 256;
  int best = 0;
  double best_v = -1.0;
  for (int j = 0; j <= kScan; ++j) {
    const double v = f(lo + (1.0 - lo) * j / kScan);
    if (v > best_v) {
      best_v = v;
      best = j;
    }
  }
  const double a = lo + (1.0 - lo) * std::max(best - 1, 0) / kScan;
  const double b = lo + (1.0 - lo) * std::min(best + 1, kScan) / kScan;
  const double refined = golden_max(f, a, b);
  return f(refined) >= best_v ? refined : lo + (1.0 - lo) * best / kScan;
}

}  // namespace

PowerAllocation solve_p3(const LinkBudget& lb, std::size_t k) {
  if (k < 2) throw DomainError("solve_p3: need at least 2 line-search points");
  const double a0 = bounds(0.0, lb.gamma_rx).alpha0;
  // A negative relative weak gain makes that AP's weak-message share work
  // against the weak UE, so the optimum may sit below alpha0 on that axis.
  const bool monotone = lb.weak_gain(0) >= 0.0 && lb.weak_gain(1) >= 0.0;
  const double lo1 = lb.weak_gain(0) < 0.0 ? 0.0 : a0;
  const double lo2 = lb.weak_gain(1) < 0.0 ? 0.0 : a0;
  const auto inner = [&](double a1) {
    return monotone ? p3_inner_monotone(a1, lo2, lb) : p3_inner_scan(a1, lo2, lb);
  };
  const auto grid = [&](std::size_t i) {
    return i + 1 == k ? 1.0
                      : lo1 + (1.0 - lo1) * static_cast<double>(i) / static_cast<double>(k - 1);
  };
  PowerAllocation best;
  best.tag = "P3";
  double best_obj = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double a1 = grid(i);
    const double a2 = inner(a1);
    const double obj = five_arm_min(comp_noma_rates(a1, a2, lb));
    if (obj > best_obj) {
      best_obj = obj;
      best_i = i;
      best.alpha1 = a1;
      best.alpha2 = a2;
    }
  }
  // Polish alpha1 inside the neighbouring cells of the best line-search point.
  const auto outer = [&](double a1) { return five_arm_min(comp_noma_rates(a1, inner(a1), lb)); };
  const double a1 = golden_max(outer, grid(best_i == 0 ? 0 : best_i - 1),
                               grid(std::min(best_i + 1, k - 1)));
  const double a2 = inner(a1);
  const double obj = five_arm_min(comp_noma_rates(a1, a2, lb));
  if (obj > best_obj) {
    best_obj = obj;
    best.alpha1 = a1;
    best.alpha2 = a2;
  }
  best.objective = best_obj;
  best.feasible = true;
  return best;
}

P4Solution solve_p4(double gamma, double rf_rate, double bandwidth) {
  const double a0 = bounds(0.0, gamma).alpha0;
  P4Solution s;
  s.strong_min_rate = rate_strong_own(a0, gamma, bandwidth);
  s.allocation.alpha1 = s.allocation.alpha2 = a0;
  s.allocation.objective = std::min(rf_rate, s.strong_min_rate);
  s.allocation.feasible = true;
  s.allocation.tag = "P4";
  return s;
}

P4Solution solve_p4(const LinkBudget& b) { return solve_p4(b.gamma_rx, b.rf_rate, b.bandwidth); }

std::vector<GridPoint> oracle_grid(Problem p, const Instance& inst, std::size_t n,
                                   const GridDomain& dom) {
  if (n < 2) throw DomainError("oracle_grid: need n >= 2");
  std::vector<GridPoint> out;
  out.reserve(n * n);
  const double step1 = (dom.hi1 - dom.lo1) / static_cast<double>(n - 1);
  const double step2 = (dom.hi2 - dom.lo2) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double a1 = i + 1 == n ? dom.hi1 : dom.lo1 + step1 * static_cast<double>(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double a2 = j + 1 == n ? dom.hi2 : dom.lo2 + step2 * static_cast<double>(j);
      const Evaluation e = evaluate(p, inst, a1, a2);
      out.push_back({a1, a2, e.objective, e.feasible});
    }
  }
  return out;
}

PowerAllocation grid_oracle(Problem p, const Instance& inst, std::size_t n,
                            const GridDomain& dom) {
  PowerAllocation best;
  best.tag = "oracle";
  double best_obj = -1.0;
  for (const GridPoint& g : oracle_grid(p, inst, n, dom)) {
    if (g.feasible && g.objective > best_obj) {
      best_obj = g.objective;
      best.alpha1 = g.alpha1;
      best.alpha2 = g.alpha2;
    }
  }
  if (best_obj >= 0.0) {
    best.objective = best_obj;
    best.feasible = true;
  }
  return best;
}

void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& grid) {
  os << "alpha1,alpha2,objective,feasible\n";
  for (const GridPoint& g : grid)
    os << format_double(g.alpha1) << ',' << format_double(g.alpha2) << ','
       << format_double(g.objective) << ',' << (g.feasible ? 1 : 0) << '\n';
}

}  // namespace vlcnoma
