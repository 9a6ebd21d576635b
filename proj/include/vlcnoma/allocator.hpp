#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "vlcnoma/rates.hpp"

namespace vlcnoma {

/// P1: sum rate, CoMP-NOMA, QoS-constrained.
/// P2: sum rate, CoMP-C-NOMA, QoS-constrained.
/// P3: max-min rate, CoMP-NOMA.
/// P4: max-min rate, CoMP-C-NOMA.
enum class Problem { p1, p2, p3, p4 };

std::string_view to_string(Problem p);

struct Thresholds {
  double t_v = 0.0;
  double t_r = 0.0;
};

/// t = exp(2 R_th / B) - 1 for the VLC and RF bandwidths.
Thresholds thresholds(double r_th, double vlc_bandwidth, double rf_bandwidth);

/// Raw bounds; infeasibility shows up as alpha_min > alpha_max.
struct FeasibilityBounds {
  double t_v = 0.0;
  double t_r = 0.0;
  double alpha_min = 0.0;
  double alpha_max = 1.0;
  double alpha0 = 0.0;

  bool nonempty() const { return alpha_min <= alpha_max; }
  double alpha_min_clamped() const;
  double alpha_max_clamped() const;
};

/// alpha_max = 1 - t/(c gamma), alpha_min = t(c gamma + 1)/(c gamma (1 + t)),
/// alpha0 = ((c gamma + 1) - sqrt(c gamma + 1)) / (c gamma).
FeasibilityBounds bounds(double t_v, double gamma, double t_r = 0.0);

/// Weak-UE SINR margin; g >= 0 iff the weak UE's direct rate reaches R_th.
/// `cross_coefficient` is 2 for the exact expansion; other values exist only
/// for fault injection.
double g_metric(double alpha1, double alpha2, const Vec2& weak_gain, double t_v, double gamma,
                double cross_coefficient = 2.0);

/// One QoS-constrained power-allocation problem instance.
struct Instance {
  LinkBudget budget;
  double r_th = 0.0;

  FeasibilityBounds feasibility_bounds() const;
};

/// Theorem-style verdict for P1. g is a convex quadratic form in
/// (sqrt a1, sqrt a2), so it is maximized over the feasible square at one of
/// its corners; with non-negative weak gains that corner is (a_max, a_max).
bool feasibility_p1(const FeasibilityBounds& b, const Vec2& weak_gain, double gamma);

/// alpha_min <= alpha_max and R_rf >= R_th.
bool feasibility_p2(const FeasibilityBounds& b, double rf_rate, double r_th);

/// Smallest alpha2 in [alpha_min, alpha_max] with g(alpha1, alpha2) >= 0 via the
/// quadratic in beta = sqrt(alpha2); nullopt when no such alpha2 exists.
std::optional<double> min_alpha2_for_g(double alpha1, const FeasibilityBounds& b,
                                       const Vec2& weak_gain, double gamma);

struct PowerAllocation {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double objective = 0.0;  // nat/s; 0 when infeasible
  bool feasible = false;
  std::string_view tag = "oracle";
};

PowerAllocation solve_p1(const Instance& inst, std::size_t k = 1000);
PowerAllocation solve_p2(const Instance& inst);
PowerAllocation solve_p3(const LinkBudget& b, std::size_t k = 1000);

struct P4Solution {
  PowerAllocation allocation;  // objective = overall min rate
  double strong_min_rate = 0.0;
};
P4Solution solve_p4(double gamma, double rf_rate, double bandwidth);
P4Solution solve_p4(const LinkBudget& b);

/// Relative slack allowed when a QoS constraint is checked by direct rate
/// evaluation. Closed-form boundary points sit exactly on a constraint and
/// may miss it by rounding.
inline constexpr double kConstraintRelTol = 1e-10;

struct Evaluation {
  double objective = 0.0;
  bool feasible = false;
};

/// Exact objective and direct constraint check at one point.
Evaluation evaluate(Problem p, const Instance& inst, double alpha1, double alpha2);

struct GridDomain {
  double lo1 = 0.0, hi1 = 1.0, lo2 = 0.0, hi2 = 1.0;
  static GridDomain unit() { return {}; }
  static GridDomain square(double lo, double hi) { return {lo, hi, lo, hi}; }
};

struct GridPoint {
  double alpha1, alpha2, objective;
  bool feasible;
};

/// Exhaustive n x n evaluation (n >= 2, endpoints included).
std::vector<GridPoint> oracle_grid(Problem p, const Instance& inst, std::size_t n,
                                   const GridDomain& dom = GridDomain::unit());

/// Best feasible point of oracle_grid; first in row-major order on ties.
PowerAllocation grid_oracle(Problem p, const Instance& inst, std::size_t n,
                            const GridDomain& dom = GridDomain::unit());

/// CSV with header alpha1,alpha2,objective,feasible.
void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& grid);

}  // namespace vlcnoma
