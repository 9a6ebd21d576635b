#include "vlcnoma/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <exception>
#include <sstream>
#include <thread>

#include "vlcnoma/error.hpp"
#include "vlcnoma/rf_channel.hpp"
#include "vlcnoma/seeding.hpp"

namespace vlcnoma {

std::string_view to_string(ClusteringPolicy p) {
  switch (p) {
    case ClusteringPolicy::none: return "none";
    case ClusteringPolicy::optimal: return "optimal-uc";
    case ClusteringPolicy::random: return "random-uc";
  }
  return "?";
}

std::string SchemeSpec::tag() const {
  std::string t(to_string(scheme));
  if (clustering != ClusteringPolicy::none) {
    t += '/';
    t += to_string(clustering);
  }
  return t;
}

SchemeSpec SchemeSpec::parse(std::string_view tag, Objective obj) {
  SchemeSpec s;
  s.objective = obj;
  const auto slash = tag.find('/');
  s.scheme = parse_scheme(tag.substr(0, slash));
  if (slash != std::string_view::npos) {
    const std::string_view pol = tag.substr(slash + 1);
    if (pol == "optimal-uc")
      s.clustering = ClusteringPolicy::optimal;
    else if (pol == "random-uc")
      s.clustering = ClusteringPolicy::random;
    else
      throw ConfigError("unknown clustering policy '" + std::string(pol) + "'");
  }
  return s;
}

std::string_view to_string(AmplitudePolicy p) {
  switch (p) {
    case AmplitudePolicy::error: return "error";
    case AmplitudePolicy::clamp: return "clamp";
    case AmplitudePolicy::allow: return "allow";
  }
  return "?";
}

TrialContext::TrialContext(Scenario sc) : scenario_(std::move(sc)) {
  scenario_.room.validate();
  const auto aps = place_aps(scenario_.room, scenario_.ap);
  if (scenario_.nlos)
    reflections_.emplace(discretize_room(scenario_.room, scenario_.nlos_resolution));
  builder_.emplace(aps, reflections_ ? &*reflections_ : nullptr);
}

MultiUserChannel draw_realization(std::uint64_t master_seed, std::size_t index,
                                  const TrialContext& ctx) {
  const Scenario& sc = ctx.scenario();
  std::vector<UeNode> ues =
      place_ues(sc.room, sc.placement, trial_seed(master_seed, index, Stream::placement));
  if (sc.random_orientation) {
    std::mt19937_64 rng(trial_seed(master_seed, index, Stream::orientation));
    for (UeNode& ue : ues) ue.normal = sample_orientation(sc.orientation, rng);
  }

  const std::size_t n = static_cast<std::size_t>(sc.placement.strong_per_cell);
  const std::size_t nw = static_cast<std::size_t>(sc.placement.weak_count);
  MultiUserChannel mu;
  const auto gains = [&](const UeNode& ue) {
    return std::array<LinkGain, 2>{ctx.builder().gain(0, ue), ctx.builder().gain(1, ue)};
  };
  for (std::size_t i = 0; i < n; ++i) mu.strong1.push_back(gains(ues[i]));
  for (std::size_t i = 0; i < n; ++i) mu.strong2.push_back(gains(ues[n + i]));
  for (std::size_t l = 0; l < nw; ++l) mu.weak.push_back(gains(ues[2 * n + l]));

  std::mt19937_64 rng(trial_seed(master_seed, index, Stream::rf_fading));
  const auto rf_row = [&](const UeNode& s) {
    std::vector<double> row;
    for (std::size_t l = 0; l < nw; ++l) {
      const double d = (s.position - ues[2 * n + l].position).norm();
      row.push_back(sample_rf_gain(d, sc.nakagami_f, sc.pathloss_exponent, rng));
    }
    return row;
  };
  for (std::size_t i = 0; i < n; ++i) mu.rf1.push_back(rf_row(ues[i]));
  for (std::size_t i = 0; i < n; ++i) mu.rf2.push_back(rf_row(ues[n + i]));
  return mu;
}

std::uint64_t channel_hash(const MultiUserChannel& mu) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto* set : {&mu.strong1, &mu.strong2, &mu.weak})
    for (const auto& ue : *set)
      for (const LinkGain& g : ue) {
        mix(g.los);
        mix(g.nlos);
      }
  for (const auto* set : {&mu.rf1, &mu.rf2})
    for (const auto& row : *set)
      for (double v : row) mix(v);
  return h;
}

namespace {

SchemeRecord evaluate_spec(const SchemeSpec& spec, const MultiUserChannel& mu,
                           const SystemParams& sp, std::uint64_t clustering_seed) {
  SchemeRecord rec;
  rec.tag = spec.tag();
  rec.objective = spec.objective;
  try {
    if (spec.clustering == ClusteringPolicy::none) {
      const Cluster c{0, 0, 0};
      const ChannelState ch = mu.cluster_channel(c);
      const RfState rf = make_rf_state(ch, mu.rf1[0][0], mu.rf2[0][0], sp);
      const SchemeOutcome o = run_scheme(spec.scheme, spec.objective, ch, sp, rf);
      rec.rates = o.rates;
      rec.feasible = o.feasible;
      rec.value = o.feasible ? o.objective : 0.0;
      rec.alpha1 = o.alpha1;
      rec.alpha2 = o.alpha2;
    } else {
      const ClusteringResult r =
          spec.clustering == ClusteringPolicy::optimal
              ? optimal_uc(mu, sp, spec.scheme, spec.objective)
              : random_uc(clustering_seed, mu, sp, spec.scheme, spec.objective);
      rec.feasible = r.all_feasible;
      rec.value = r.total;
      rec.rates.scheme = spec.scheme;
      rec.rates.sum = rec.rates.min = r.total;
    }
  } catch (const DegenerateChannelError& e) {
    rec.degenerate = true;
    rec.error = e.what();
  } catch (const std::exception& e) {
    rec.degenerate = true;
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

TrialRecord run_trial(std::uint64_t master_seed, std::size_t index, const TrialContext& ctx) {
  TrialRecord tr;
  tr.index = index;
  tr.placement_seed = trial_seed(master_seed, index, Stream::placement);
  const MultiUserChannel mu = draw_realization(master_seed, index, ctx);
  tr.channel_hash = channel_hash(mu);
  const std::uint64_t cseed = trial_seed(master_seed, index, Stream::clustering);
  for (const SchemeSpec& spec : ctx.scenario().schemes)
    tr.schemes.push_back(evaluate_spec(spec, mu, ctx.scenario().system, cseed));
  return tr;
}

std::string_view to_string(SweepVar v) {
  switch (v) {
    case SweepVar::p_elec_dbm: return "p_elec_dbm";
    case SweepVar::r_th: return "r_th";
    case SweepVar::pd_area_cm2: return "pd_area_cm2";
    case SweepVar::d_ap: return "d_ap";
    case SweepVar::h_ap: return "h_ap";
  }
  return "?";
}

SweepVar parse_sweep_var(std::string_view s) {
  for (auto v : {SweepVar::p_elec_dbm, SweepVar::r_th, SweepVar::pd_area_cm2, SweepVar::d_ap,
                 SweepVar::h_ap})
    if (to_string(v) == s) return v;
  throw ConfigError("unknown sweep variable '" + std::string(s) + "'");
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

Scenario apply_sweep(const Scenario& base, SweepVar var, double value) {
  Scenario sc = base;
  switch (var) {
    case SweepVar::p_elec_dbm: sc.system.p_elec = dbm_to_watt(value); break;
    case SweepVar::r_th: sc.system.r_th = value; break;
    case SweepVar::pd_area_cm2: sc.placement.receiver.pd_area = value * 1e-4; break;
    case SweepVar::d_ap: sc.room.ap_separation = value; break;
    case SweepVar::h_ap: sc.room.ap_height = value; break;
  }
  return sc;
}

Aggregate aggregate(const std::vector<TrialRecord>& records, std::size_t k, bool zero_fill) {
  Aggregate a;
  double sum = 0.0, sum_sq = 0.0;
  std::size_t used = 0;
  for (const TrialRecord& tr : records) {
    const SchemeRecord& r = tr.schemes.at(k);
    if (a.scheme.empty()) {
      a.scheme = r.tag;
      a.objective = r.objective;
    }
    ++a.n_trials;
    if (r.degenerate)
      ++a.n_degenerate;
    else if (!r.feasible)
      ++a.n_infeasible;
    const bool counted = zero_fill || (r.feasible && !r.degenerate);
    if (!counted) continue;
    const double v = r.feasible && !r.degenerate ? r.value : 0.0;
    sum += v;
    sum_sq += v * v;
    ++used;
  }
  if (used > 0) {
    a.mean = sum / static_cast<double>(used);
    if (used > 1) {
      const double var =
          std::max(0.0, (sum_sq - sum * a.mean) / static_cast<double>(used - 1));
      a.std_error = std::sqrt(var / static_cast<double>(used));
    }
  }
  return a;
}

namespace {

Scenario resolve_power(Scenario sc, AmplitudePolicy policy, double point,
                       std::vector<std::string>& warnings) {
  const double bound = sc.system.max_p_elec();
  if (sc.system.p_elec <= bound * (1.0 + 1e-12)) return sc;
  std::ostringstream msg;
  msg << "P_elec = " << sc.system.p_elec << " W exceeds (nu I_DC)^2/2 = " << bound
      << " W at sweep value " << point;
  switch (policy) {
    case AmplitudePolicy::error: throw ConfigError(msg.str());
    case AmplitudePolicy::clamp:
      warnings.push_back(msg.str() + "; clamped");
      sc.system.p_elec = bound;
      break;
    case AmplitudePolicy::allow:
      warnings.push_back(msg.str() + "; peak-amplitude constraint not enforced");
      break;
  }
  return sc;
}

std::vector<TrialRecord> run_point(const TrialContext& ctx, std::size_t trials,
                                   std::uint64_t master_seed, unsigned threads) {
  std::vector<TrialRecord> out(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    try {
      for (std::size_t i = next++; i < trials && !failed; i = next++)
        out[i] = run_trial(master_seed, i, ctx);
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  const unsigned n = std::max(1u, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSettings& s) {
  if (s.trials == 0) throw ConfigError("trials: must be at least 1");
  if (s.sweep.values.empty()) throw ConfigError("sweep.values: must not be empty");
  if (s.scenario.schemes.empty()) throw ConfigError("schemes: must not be empty");
  for (double v : s.sweep.values)
    if (!std::isfinite(v)) throw ConfigError("sweep.values: non-finite entry");

  bool clustered = false;
  for (const SchemeSpec& sp : s.scenario.schemes)
    clustered = clustered || sp.clustering != ClusteringPolicy::none;
  const PlacementPolicy& pl = s.scenario.placement;
  if (pl.strong_per_cell < 1 || pl.weak_count < 1)
    throw ConfigError("placement: need at least one strong UE per cell and one weak UE");
  if (clustered && pl.strong_per_cell != pl.weak_count)
    throw ConfigError("placement: clustering needs strong_per_cell == weak_count");

  ExperimentResult res;
  // Validate every point before running any trial.
  std::vector<Scenario> points;
  for (double v : s.sweep.values) {
    Scenario sc = apply_sweep(s.scenario, s.sweep.var, v);
    const bool bad_value =
        (s.sweep.var == SweepVar::pd_area_cm2 && !(v > 0.0)) ||
        (s.sweep.var == SweepVar::r_th && v < 0.0) ||
        ((s.sweep.var == SweepVar::d_ap || s.sweep.var == SweepVar::h_ap) && !(v > 0.0));
    if (bad_value)
      throw ConfigError("sweep.values: " + std::string(to_string(s.sweep.var)) +
                        " value out of range");
    sc.room.validate();
    if (!(coverage_radius(sc.room, sc.placement.half_power_semiangle) >
          sc.room.ap_separation / 2.0))
      throw ConfigError("sweep.values: coverage disks do not overlap at " +
                        std::string(to_string(s.sweep.var)) + " value");
    points.push_back(resolve_power(std::move(sc), s.amplitude_policy, v, res.warnings));
  }

  for (std::size_t p = 0; p < points.size(); ++p) {
    const TrialContext ctx(points[p]);
    std::vector<TrialRecord> recs = run_point(ctx, s.trials, s.master_seed, s.threads);
    for (std::size_t k = 0; k < s.scenario.schemes.size(); ++k) {
      Aggregate a = aggregate(recs, k, s.zero_fill_infeasible);
      a.sweep_var = std::string(to_string(s.sweep.var));
      a.sweep_value = s.sweep.values[p];
      res.aggregates.push_back(std::move(a));
    }
    if (s.keep_records) res.records.push_back(std::move(recs));
  }
  return res;
}

}  // namespace vlcnoma
