#include "vlcnoma/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vlcnoma/config.hpp"
#include "vlcnoma/error.hpp"
#include "vlcnoma/precoding.hpp"
#include "vlcnoma/seeding.hpp"

namespace vlcnoma {

Scenario default_scenario() {
  ExperimentConfig c;
  c.sweep.variable = "p_elec_dbm";
  c.sweep.values = {c.link_budget.p_elec_dbm};
  c.schemes = {"comp-noma"};
  return c.to_settings().scenario;
}

InstanceSampler::InstanceSampler(const TrialContext& ctx, std::uint64_t seed, double p_lo_dbm,
                                 double p_hi_dbm, double rth_fraction)
    : ctx_(ctx),
      seed_(seed),
      rng_(derive_seed({seed, 0x5a})),
      p_lo_(p_lo_dbm),
      p_hi_(p_hi_dbm),
      rth_fraction_(rth_fraction) {}

Instance InstanceSampler::next() {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const MultiUserChannel mu = draw_realization(seed_, index_++, ctx_);
    const ChannelState ch = mu.cluster_channel({0, 0, 0});
    SystemParams sp = ctx_.scenario().system;
    sp.p_elec = dbm_to_watt(p_lo_ + (p_hi_ - p_lo_) * u(rng_));
    const RfState rf = make_rf_state(ch, mu.rf1[0][0], mu.rf2[0][0], sp);
    const double frac = rth_fraction_ * u(rng_);
    try {
      Instance inst{make_link_budget(ch, sp, rf), 0.0};
      inst.r_th = frac * sic_capacity(inst.budget.gamma_rx, inst.budget.bandwidth);
      return inst;
    } catch (const DegenerateChannelError&) {
    }
  }
}

Instance InstanceSampler::next_feasible(bool p2) {
  for (;;) {
    Instance inst = next();
    const FeasibilityBounds b = inst.feasibility_bounds();
    const bool ok = p2 ? feasibility_p2(b, inst.budget.rf_rate, inst.r_th)
                       : feasibility_p1(b, inst.budget.weak_gain, inst.budget.gamma_rx);
    if (ok) return inst;
  }
}

namespace {

std::string describe(std::size_t bad, std::size_t n, const char* what) {
  std::ostringstream os;
  os << bad << " " << what << " in " << n << " cases";
  return os.str();
}

bool scan_feasible(Problem p, const Instance& inst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (evaluate(p, inst, static_cast<double>(i) / (n - 1), static_cast<double>(j) / (n - 1))
              .feasible)
        return true;
  return false;
}

}  // namespace

SuiteResult verify_g_equivalence(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "g-equivalence";
  const TrialContext ctx(default_scenario());
  InstanceSampler sampler(ctx, derive_seed({o.seed, 1}));
  std::mt19937_64 rng(derive_seed({o.seed, 2}));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t bad = 0;
  Instance inst = sampler.next();
  for (std::size_t k = 0; k < o.g_tuples; ++k) {
    if (k % 20 == 0) inst = sampler.next();
    const LinkBudget& b = inst.budget;
    const double t_v = thresholds(inst.r_th, b.bandwidth, b.rf_bandwidth).t_v;
    const double a1 = u(rng), a2 = u(rng);
    const double g = g_metric(a1, a2, b.weak_gain, t_v, b.gamma_rx, o.g_cross_coefficient);
    const double margin = rate_weak_vlc(a1, a2, b.weak_gain, b.gamma_rx, b.bandwidth) - inst.r_th;
    // Ties at rounding level carry no sign information.
    if (std::abs(margin) <= 1e-12 * std::max(inst.r_th, 1.0)) continue;
    ++r.cases;
    if ((g >= 0.0) != (margin >= 0.0)) ++bad;
  }
  r.max_deviation = static_cast<double>(bad);
  r.passed = bad == 0;
  r.detail = describe(bad, r.cases, "sign disagreements");
  return r;
}

SuiteResult verify_feasibility(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "feasibility-vs-scan";
  const TrialContext ctx(default_scenario());
  InstanceSampler sampler(ctx, derive_seed({o.seed, 3}), 0.0, 40.0, 0.6);
  std::size_t bad = 0, rescanned = 0;
  for (std::size_t k = 0; k < o.feasibility_instances; ++k) {
    const Instance inst = sampler.next();
    const FeasibilityBounds b = inst.feasibility_bounds();
    const bool t1 = feasibility_p1(b, inst.budget.weak_gain, inst.budget.gamma_rx);
    const bool t2 = feasibility_p2(b, inst.budget.rf_rate, inst.r_th);
    for (auto [p, verdict] : {std::pair{Problem::p1, t1}, std::pair{Problem::p2, t2}}) {
      ++r.cases;
      if (scan_feasible(p, inst, 200) == verdict) continue;
      ++rescanned;
      if (scan_feasible(p, inst, 800) != verdict) ++bad;
    }
  }
  r.max_deviation = static_cast<double>(bad);
  r.passed = bad == 0;
  std::ostringstream os;
  os << describe(bad, r.cases, "verdict disagreements") << " (" << rescanned
     << " borderline rescans)";
  r.detail = os.str();
  return r;
}

SuiteResult verify_solvers(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "solver-vs-grid";
  const TrialContext ctx(default_scenario());
  InstanceSampler sampler(ctx, derive_seed({o.seed, 4}));
  double worst = 0.0;
  std::size_t bad = 0;
  const auto gap = [](double solver, double oracle) {
    return oracle > 0.0 ? (oracle - solver) / oracle : 0.0;
  };
  for (std::size_t k = 0; k < o.instances; ++k) {
    {
      const Instance inst = sampler.next_feasible(false);
      const FeasibilityBounds b = inst.feasibility_bounds();
      const PowerAllocation s = solve_p1(inst);
      const PowerAllocation g =
          grid_oracle(Problem::p1, inst, o.grid, GridDomain::square(b.alpha_min, b.alpha_max));
      const double d = gap(s.objective, g.objective);
      worst = std::max(worst, d);
      if (d > o.relative_gap || !evaluate(Problem::p1, inst, s.alpha1, s.alpha2).feasible) ++bad;
    }
    {
      const Instance inst = sampler.next_feasible(true);
      const FeasibilityBounds b = inst.feasibility_bounds();
      const PowerAllocation s = solve_p2(inst);
      const PowerAllocation g =
          grid_oracle(Problem::p2, inst, o.grid, GridDomain::square(b.alpha_min, b.alpha_max));
      const double d = gap(s.objective, g.objective);
      worst = std::max(worst, d);
      if (d > o.relative_gap || !evaluate(Problem::p2, inst, s.alpha1, s.alpha2).feasible) ++bad;
    }
    {
      const Instance inst = sampler.next();
      const PowerAllocation s = solve_p3(inst.budget);
      const PowerAllocation g = grid_oracle(Problem::p3, inst, o.grid);
      const double d = gap(s.objective, g.objective);
      worst = std::max(worst, d);
      if (d > o.relative_gap) ++bad;

      const P4Solution s4 = solve_p4(inst.budget);
      const PowerAllocation g4 = grid_oracle(Problem::p4, inst, o.grid);
      const double d4 = gap(s4.allocation.objective, g4.objective);
      worst = std::max(worst, d4);
      if (g4.objective > s4.allocation.objective * (1.0 + 1e-6)) ++bad;
    }
    r.cases += 4;
  }
  r.max_deviation = worst;
  r.passed = bad == 0;
  r.detail = describe(bad, r.cases, "solver results below the grid oracle");
  return r;
}

SuiteResult verify_amplitude(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "amplitude-fuzz";
  const Scenario sc = default_scenario();
  const TrialContext ctx(sc);
  std::mt19937_64 rng(derive_seed({o.seed, 5}));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SystemParams& sp = sc.system;
  const double p_max = sp.max_p_elec();
  std::size_t index = 0;
  try {
    for (std::size_t k = 0; k < o.amplitude_configs; ++k) {
      Precoder pre;
      for (;;) {
        const MultiUserChannel mu = draw_realization(derive_seed({o.seed, 6}), index++, ctx);
        try {
          pre = zf_precoder(mu.cluster_channel({0, 0, 0}).h_ab());
          break;
        } catch (const DegenerateChannelError&) {
        }
      }
      const bool tight = k == 0;
      const double a1 = tight ? 0.5 : u(rng), a2 = tight ? 0.5 : u(rng);
      const double p = tight ? p_max : p_max * u(rng);
      const AmplitudeReport rep =
          check_amplitude(pre, a1, a2, p, sp.modulation_index, sp.dc_bias, o.amplitude_samples,
                          derive_seed({o.seed, 7, k}), o.amplitude_tolerance);
      r.max_deviation = std::max(r.max_deviation, rep.max_ratio);
      r.cases += rep.samples;
    }
    // Identity precoder with every message at +1 is the equality case.
    const double ratio = amplitude_ratio(Precoder{}, 0.5, 0.5, p_max, sp.modulation_index,
                                         sp.dc_bias, 1.0, 1.0, 1.0);
    r.max_deviation = std::max(r.max_deviation, ratio);
    if (ratio > 1.0 + o.amplitude_tolerance + 16 * std::numeric_limits<double>::epsilon())
      throw AmplitudeViolation("tight case exceeds the bound");
    ++r.cases;
    r.passed = true;
    r.detail = "max ||W s||_inf / (nu I_DC) over all samples";
  } catch (const AmplitudeViolation& e) {
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

SuiteResult verify_zero_forcing(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "zf-diagonal";
  std::mt19937_64 rng(derive_seed({o.seed, 8}));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t bad = 0;
  while (r.cases < 1000) {
    Mat2 H;
    H << u(rng), u(rng), u(rng), u(rng);
    H *= std::pow(10.0, -6.0 + 2.0 * u(rng));
    const Mat2 inv = H.inverse();
    if (H.norm() * inv.norm() > 1e3) continue;  // well-conditioned draws only
    const Precoder p = zf_precoder(H);
    const Mat2 HW = H * p.W;
    const double off = std::max(std::abs(HW(0, 1)), std::abs(HW(1, 0))) / p.norm_scale;
    r.max_deviation = std::max(r.max_deviation, off);
    if (off > 1e-10) ++bad;
    ++r.cases;
  }
  r.passed = bad == 0;
  r.detail = "max off-diagonal of H W relative to norm_scale";
  return r;
}

SuiteResult verify_nlos_neumann(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "nlos-neumann";
  const Scenario sc = default_scenario();
  const ReflectionModel model(discretize_room(sc.room, 0.5));
  const Eigen::MatrixXd& E = model.transfer();
  const Eigen::VectorXd& z = model.reflectivities();
  std::mt19937_64 rng(derive_seed({o.seed, 9}));
  std::uniform_real_distribution<double> ux(-sc.room.length / 2, sc.room.length / 2);
  std::uniform_real_distribution<double> uy(-sc.room.width / 2, sc.room.width / 2);
  std::size_t bad = 0;
  for (std::size_t k = 0; k < o.nlos_placements; ++k) {
    ApNode ap = sc.ap;
    ap.position = Vec3(ux(rng), uy(rng), sc.room.ap_height);
    UeNode ue = sc.placement.receiver;
    ue.position = Vec3(ux(rng), uy(rng), sc.room.ue_height);
    ue.normal = sample_orientation(sc.orientation, rng);
    const double exact = model.nlos_gain(ap, ue);
    const Eigen::VectorXd rv = model.receiver_vector(ue);
    Eigen::VectorXd x = z.cwiseProduct(model.source_vector(ap));
    double series = rv.dot(x);
    for (int term = 1; term < 50; ++term) {
      x = z.cwiseProduct(E * x);
      series += rv.dot(x);
    }
    const double err = exact > 0.0 ? std::abs(series - exact) / exact : std::abs(series);
    r.max_deviation = std::max(r.max_deviation, err);
    if (err > 1e-8) ++bad;
    ++r.cases;
  }
  r.passed = bad == 0;
  r.detail = "max relative error of the 50-term series";
  return r;
}

SuiteResult verify_sic_identity(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "sic-identity";
  std::mt19937_64 rng(derive_seed({o.seed, 10}));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double bw = 20e6;
  for (int k = 0; k < 10000; ++k) {
    const double a = u(rng);
    const double gamma = std::pow(10.0, -3.0 + 8.0 * u(rng));
    const double total = sic_capacity(gamma, bw);
    const double sum = rate_strong_own(a, gamma, bw) + rate_strong_decode_weak(a, gamma, bw);
    r.max_deviation = std::max(r.max_deviation, std::abs(sum - total) / total);
    ++r.cases;
  }
  r.passed = r.max_deviation <= 1e-12;
  r.detail = "max relative deviation";
  return r;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& o) {
  return {verify_g_equivalence(o), verify_feasibility(o), verify_solvers(o),
          verify_amplitude(o),     verify_zero_forcing(o), verify_nlos_neumann(o),
          verify_sic_identity(o)};
}

}  // namespace vlcnoma
