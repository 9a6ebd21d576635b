#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "vlcnoma/clustering.hpp"
#include "vlcnoma/error.hpp"
#include "vlcnoma/montecarlo.hpp"
#include "vlcnoma/seeding.hpp"
#include "vlcnoma/verify.hpp"

using namespace vlcnoma;

namespace {

Scenario multi_scenario(int n) {
  Scenario sc = default_scenario();
  sc.placement.strong_per_cell = n;
  sc.placement.weak_count = n;
  sc.nlos = false;
  sc.system.p_elec = dbm_to_watt(7.0);
  sc.system.r_th = 0.0;
  return sc;
}

}  // namespace

TEST_CASE("enumerating clusterings") {
  CHECK(enumerate_clusterings(1, 1, 1).size() == 1);
  const auto all = enumerate_clusterings(2, 2, 2);
  CHECK(all.size() == 4);
  std::set<std::vector<int>> seen;
  for (const auto& cl : all) {
    std::set<int> s1, s2, w;
    std::vector<int> key;
    for (const auto& c : cl) {
      s1.insert(c.strong1);
      s2.insert(c.strong2);
      w.insert(c.weak);
      key.insert(key.end(), {c.strong1, c.strong2, c.weak});
    }
    CHECK(s1.size() == 2);
    CHECK(s2.size() == 2);
    CHECK(w.size() == 2);
    seen.insert(key);
  }
  CHECK(seen.size() == 4);
  CHECK(enumerate_clusterings(3, 3, 3).size() == 36);
  CHECK_THROWS_AS(enumerate_clusterings(2, 1, 2), ConfigError);
}

TEST_CASE("Hungarian assignment on a hand example") {
  const std::vector<std::vector<double>> w{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  const auto a = hungarian_max(w);
  double total = 0;
  for (int i = 0; i < 3; ++i) total += w[i][a[i]];
  std::vector<int> perm{0, 1, 2};
  double best = 0;
  do {
    double s = 0;
    for (int i = 0; i < 3; ++i) s += w[i][perm[i]];
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(total == best);
}

TEST_CASE("cluster value") {
  const Scenario sc = multi_scenario(1);
  const TrialContext ctx(sc);
  const MultiUserChannel mu = draw_realization(3, 0, ctx);
  const ChannelState ch = mu.cluster_channel({0, 0, 0});
  const RfState rf = make_rf_state(ch, mu.rf1[0][0], mu.rf2[0][0], sc.system);
  const Instance inst{make_link_budget(ch, sc.system, rf), sc.system.r_th};
  const auto p1 = solve_p1(inst);
  CHECK(cluster_value({0, 0, 0}, mu, sc.system, Scheme::comp_noma, Objective::sum, 1) ==
        doctest::Approx(p1.feasible ? p1.objective : 0.0));

  SystemParams half = sc.system;
  half.bandwidth /= 2;
  const Instance hinst{make_link_budget(ch, half, rf), sc.system.r_th};
  const auto hp = solve_p1(hinst);
  CHECK(cluster_value({0, 0, 0}, mu, sc.system, Scheme::comp_noma, Objective::sum, 2) ==
        doctest::Approx(hp.feasible ? hp.objective : 0.0));
}

TEST_CASE("optimal versus random clustering") {
  const Scenario sc = multi_scenario(2);
  const TrialContext ctx(sc);
  double opt_sum = 0, rnd_sum = 0;
  for (std::size_t t = 0; t < 30; ++t) {
    const MultiUserChannel mu = draw_realization(5, t, ctx);
    for (Scheme s : {Scheme::comp_noma, Scheme::comp_cnoma}) {
      const auto e = optimal_uc_enumerate(mu, sc.system, s, Objective::sum);
      const auto h = optimal_uc_assignment(mu, sc.system, s, Objective::sum);
      CHECK(h.total == doctest::Approx(e.total).epsilon(1e-12));
      for (const auto& cl : enumerate_clusterings(2, 2, 2)) {
        double v = 0;
        for (const auto& c : cl) v += cluster_value(c, mu, sc.system, s, Objective::sum, 2);
        CHECK(e.total >= v - 1e-9 * std::abs(v));
      }
      const auto r = random_uc(derive_seed({t}), mu, sc.system, s, Objective::sum);
      CHECK(e.total >= r.total);
      opt_sum += e.total;
      rnd_sum += r.total;
    }
  }
  CHECK(opt_sum > rnd_sum);

  const MultiUserChannel one = draw_realization(5, 0, TrialContext(multi_scenario(1)));
  const auto u = optimal_uc(one, sc.system, Scheme::comp_noma, Objective::sum);
  const auto v = random_uc(1, one, sc.system, Scheme::comp_noma, Objective::sum);
  CHECK(u.clustering == v.clustering);
}
