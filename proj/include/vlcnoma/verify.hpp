#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vlcnoma/allocator.hpp"
#include "vlcnoma/montecarlo.hpp"

namespace vlcnoma {

/// Draws power-allocation instances from channel realizations of `ctx`, with
/// P_elec log-uniform in [p_lo_dbm, p_hi_dbm] and R_th a uniform fraction
/// (up to `rth_fraction`) of the strong UEs' SIC capacity. ZF-degenerate
/// draws are skipped.
class InstanceSampler {
 public:
  InstanceSampler(const TrialContext& ctx, std::uint64_t seed, double p_lo_dbm = 0.0,
                  double p_hi_dbm = 40.0, double rth_fraction = 0.5);
  Instance next();
  /// Next instance with a feasible P1 (or P2 if `p2`).
  Instance next_feasible(bool p2);

 private:
  const TrialContext& ctx_;
  std::uint64_t seed_;
  std::size_t index_ = 0;
  std::mt19937_64 rng_;
  double p_lo_, p_hi_, rth_fraction_;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t instances = 200;       // solver-vs-grid instances per problem
  std::size_t grid = 500;            // oracle resolution
  std::size_t feasibility_instances = 500;
  std::size_t g_tuples = 10000;
  std::size_t amplitude_configs = 100;
  std::size_t amplitude_samples = 1000;  // per config
  double amplitude_tolerance = 0.0;      // extra relative slack on the peak bound
  double g_cross_coefficient = 2.0;      // fault-injection hook for the g metric
  std::size_t nlos_placements = 100;
  double relative_gap = 1e-3;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  std::size_t cases = 0;
  std::string detail;
};

SuiteResult verify_g_equivalence(const VerifyOptions& o);
SuiteResult verify_feasibility(const VerifyOptions& o);
SuiteResult verify_solvers(const VerifyOptions& o);
SuiteResult verify_amplitude(const VerifyOptions& o);
SuiteResult verify_zero_forcing(const VerifyOptions& o);
SuiteResult verify_nlos_neumann(const VerifyOptions& o);
SuiteResult verify_sic_identity(const VerifyOptions& o);

std::vector<SuiteResult> run_verify(const VerifyOptions& o);

/// Default scenario used by the verification suites (standard room, NLOS on).
Scenario default_scenario();

}  // namespace vlcnoma
