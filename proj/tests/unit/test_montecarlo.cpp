#include <cmath>

#include "doctest.h"
#include "vlcnoma/error.hpp"
#include "vlcnoma/io.hpp"
#include "vlcnoma/montecarlo.hpp"
#include "vlcnoma/verify.hpp"

using namespace vlcnoma;

namespace {

ExperimentSettings small_settings(std::size_t trials) {
  ExperimentSettings s;
  s.scenario = default_scenario();
  s.scenario.nlos = false;
  s.scenario.system.r_th = 1e5;
  s.scenario.schemes = {SchemeSpec::parse("comp-noma", Objective::sum),
                        SchemeSpec::parse("comp-cnoma", Objective::sum),
                        SchemeSpec::parse("noma", Objective::sum)};
  s.sweep = {SweepVar::p_elec_dbm, {5.0, 7.0}};
  s.trials = trials;
  s.master_seed = 99;
  return s;
}

}  // namespace

TEST_CASE("trials are reproducible and paired") {
  ExperimentSettings s = small_settings(1);
  s.scenario.system.p_elec = dbm_to_watt(7.0);
  const TrialContext ctx(s.scenario);
  const TrialRecord a = run_trial(1, 17, ctx), b = run_trial(1, 17, ctx);
  CHECK(a.channel_hash == b.channel_hash);
  REQUIRE(a.schemes.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.schemes[i].value == b.schemes[i].value);

  Scenario rev = s.scenario;
  std::reverse(rev.schemes.begin(), rev.schemes.end());
  const TrialRecord r = run_trial(1, 17, TrialContext(rev));
  CHECK(r.channel_hash == a.channel_hash);
  CHECK(r.schemes[2].value == a.schemes[0].value);
  CHECK(r.schemes[0].value == a.schemes[2].value);
  CHECK(run_trial(1, 18, ctx).channel_hash != a.channel_hash);
}

TEST_CASE("relay cross-check within one trial") {
  ExperimentSettings s = small_settings(1);
  s.scenario.system.p_elec = dbm_to_watt(7.0);
  const TrialContext ctx(s.scenario);
  for (std::size_t t = 0; t < 200; ++t) {
    const TrialRecord rec = run_trial(3, t, ctx);
    const SchemeRecord& n = rec.schemes[0];
    const SchemeRecord& c = rec.schemes[1];
    if (!n.feasible || !c.feasible) continue;
    // When the relay arm beats VLC at the NOMA optimum, both schemes share the
    // strong-UE terms there and C-NOMA can only gain.
    if (c.rates.r_weak_link >= n.rates.r_weak_link) CHECK(c.value >= n.value * (1 - 1e-12));
  }
}

TEST_CASE("experiment aggregation") {
  SUBCASE("counts add up and worker count does not matter") {
    ExperimentSettings s = small_settings(40);
    const auto one = run_experiment(s);
    s.threads = 3;
    const auto three = run_experiment(s);
    CHECK(aggregate_csv(one.aggregates) == aggregate_csv(three.aggregates));
    for (const auto& a : one.aggregates) {
      CHECK(a.n_trials == 40);
      CHECK(a.n_infeasible + a.n_degenerate <= a.n_trials);
    }
  }
  SUBCASE("constant channel mean equals the single trial") {
    ExperimentSettings s = small_settings(5);
    s.scenario.placement.center_radius = 0.0;
    s.scenario.random_orientation = false;
    s.scenario.nakagami_f = 1e9;
    s.scenario.placement.weak_count = 1;
    s.sweep.values = {7.0};
    s.keep_records = true;
    const auto res = run_experiment(s);
    REQUIRE(res.records.size() == 1);
    const auto& recs = res.records[0];
    // Strong UEs are pinned; the weak UE still moves. Compare against records.
    double sum = 0;
    std::size_t n = 0;
    for (const auto& r : recs)
      if (r.schemes[0].feasible && !r.schemes[0].degenerate) {
        sum += r.schemes[0].value;
        ++n;
      }
    if (n > 0) CHECK(res.aggregates[0].mean == doctest::Approx(sum / n));
  }
  SUBCASE("zero trials and bad grids are rejected up front") {
    ExperimentSettings s = small_settings(0);
    CHECK_THROWS_AS(run_experiment(s), ConfigError);
    s = small_settings(5);
    s.sweep.values = {};
    CHECK_THROWS_AS(run_experiment(s), ConfigError);
    s = small_settings(5);
    s.sweep = {SweepVar::pd_area_cm2, {1.0, -2.0}};
    CHECK_THROWS_AS(run_experiment(s), ConfigError);
  }
  SUBCASE("zero-fill versus exclusion") {
    ExperimentSettings s = small_settings(60);
    s.sweep.values = {7.0};
    s.scenario.system.r_th = 2e4;
    const auto ex = run_experiment(s);
    s.zero_fill_infeasible = true;
    const auto zf = run_experiment(s);
    const auto& a = ex.aggregates[0];
    const auto& b = zf.aggregates[0];
    CHECK(a.n_infeasible == b.n_infeasible);
    REQUIRE(a.n_infeasible > 0);
    REQUIRE(a.n_infeasible + a.n_degenerate < a.n_trials);
    CHECK(b.mean < a.mean);
  }
}

TEST_CASE("standard error shrinks like one over root n") {
  ExperimentSettings s = small_settings(100);
  s.sweep.values = {7.0};
  s.scenario.schemes = {SchemeSpec::parse("comp-oma", Objective::sum)};
  s.scenario.system.r_th = 0.0;
  s.threads = 4;
  const double e2 = run_experiment(s).aggregates[0].std_error;
  s.trials = 1000;
  const double e3 = run_experiment(s).aggregates[0].std_error;
  s.trials = 10000;
  const double e4 = run_experiment(s).aggregates[0].std_error;
  CHECK(e2 / e3 == doctest::Approx(std::sqrt(10.0)).epsilon(0.2));
  CHECK(e3 / e4 == doctest::Approx(std::sqrt(10.0)).epsilon(0.2));
}

TEST_CASE("scheme spec tags") {
  const auto s = SchemeSpec::parse("comp-noma/optimal-uc", Objective::min);
  CHECK(s.clustering == ClusteringPolicy::optimal);
  CHECK(s.tag() == "comp-noma/optimal-uc");
  CHECK_THROWS_AS(SchemeSpec::parse("comp-noma/greedy", Objective::sum), ConfigError);
  CHECK(parse_sweep_var("r_th") == SweepVar::r_th);
  CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
}
