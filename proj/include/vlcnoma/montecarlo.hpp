#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlcnoma/clustering.hpp"
#include "vlcnoma/geometry.hpp"

namespace vlcnoma {

enum class ClusteringPolicy { none, optimal, random };

std::string_view to_string(ClusteringPolicy p);

/// One output series: a scheme, the objective it optimizes and, for
/// multi-user scenarios, how the UEs are grouped.
struct SchemeSpec {
  Scheme scheme = Scheme::comp_noma;
  Objective objective = Objective::sum;
  ClusteringPolicy clustering = ClusteringPolicy::none;

  /// "comp-noma", or "comp-noma/optimal-uc" when clustered.
  std::string tag() const;
  static SchemeSpec parse(std::string_view tag, Objective obj);
};

enum class AmplitudePolicy {
  error,  // reject P_elec above (nu I_DC)^2 / 2
  clamp,  // warn and clamp to the bound
  allow,  // warn and keep the requested power (peak constraint not enforced)
};

std::string_view to_string(AmplitudePolicy p);

struct Scenario {
  RoomConfig room;
  ApNode ap;
  PlacementPolicy placement;
  OrientationModel orientation;
  bool random_orientation = true;
  bool nlos = true;
  double nlos_resolution = 0.5;  // m
  SystemParams system;
  double nakagami_f = 1.0;
  double pathloss_exponent = 2.0;
  std::vector<SchemeSpec> schemes;
};

struct SchemeRecord {
  std::string tag;
  Objective objective = Objective::sum;
  SchemeRates rates;
  double value = 0.0;  // optimized objective, 0 unless feasible
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  bool feasible = false;
  bool degenerate = false;
  std::string error;  // set when the scheme could not be evaluated
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t placement_seed = 0;
  std::uint64_t channel_hash = 0;
  std::vector<SchemeRecord> schemes;  // in Scenario::schemes order
};

/// Scenario-level precomputation (AP placement and reflection model).
class TrialContext {
 public:
  explicit TrialContext(Scenario sc);
  const Scenario& scenario() const { return scenario_; }
  const ChannelBuilder& builder() const { return *builder_; }

 private:
  Scenario scenario_;
  std::optional<ReflectionModel> reflections_;
  std::optional<ChannelBuilder> builder_;
};

/// Draws the realization of trial `index` (placement, orientation, fading),
/// derived only from (master_seed, index), and evaluates every scheme on it.
TrialRecord run_trial(std::uint64_t master_seed, std::size_t index, const TrialContext& ctx);

/// Realization only.
MultiUserChannel draw_realization(std::uint64_t master_seed, std::size_t index,
                                  const TrialContext& ctx);

/// FNV-1a over every gain in the realization.
std::uint64_t channel_hash(const MultiUserChannel& mu);

enum class SweepVar { p_elec_dbm, r_th, pd_area_cm2, d_ap, h_ap };

std::string_view to_string(SweepVar v);
SweepVar parse_sweep_var(std::string_view s);

struct Sweep {
  SweepVar var = SweepVar::p_elec_dbm;
  std::vector<double> values;
};

/// Sets the swept quantity on a copy of the scenario.
Scenario apply_sweep(const Scenario& base, SweepVar var, double value);

/// dBm to W.
double dbm_to_watt(double dbm);

struct ExperimentSettings {
  Scenario scenario;
  Sweep sweep;
  std::size_t trials = 10000;
  std::uint64_t master_seed = 1;
  bool zero_fill_infeasible = false;
  AmplitudePolicy amplitude_policy = AmplitudePolicy::error;
  unsigned threads = 1;
  bool keep_records = false;
};

struct Aggregate {
  std::string sweep_var;
  double sweep_value = 0.0;
  std::string scheme;
  Objective objective = Objective::sum;
  double mean = 0.0;    // nat/s
  double std_error = 0.0;  // nat/s
  std::size_t n_trials = 0;
  std::size_t n_infeasible = 0;
  std::size_t n_degenerate = 0;
};

struct ExperimentResult {
  std::vector<Aggregate> aggregates;  // sweep-point major, then scheme order
  std::vector<std::vector<TrialRecord>> records;  // per sweep point, if kept
  std::vector<std::string> warnings;
};

/// Validates the sweep grid and power bound, then runs every point.
/// Throws ConfigError before any trial runs when the setup is invalid.
ExperimentResult run_experiment(const ExperimentSettings& settings);

/// Mean and standard error of one series over trial records.
Aggregate aggregate(const std::vector<TrialRecord>& records, std::size_t scheme_index,
                    bool zero_fill);

}  // namespace vlcnoma
