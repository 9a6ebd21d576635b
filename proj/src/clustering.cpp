#include "vlcnoma/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

ChannelState MultiUserChannel::cluster_channel(const Cluster& c) const {
  ChannelState ch;
  ch.strong[0] = strong1.at(c.strong1);
  ch.strong[1] = strong2.at(c.strong2);
  ch.weak = weak.at(c.weak);
  return ch;
}

std::vector<Clustering> enumerate_clusterings(int n1, int n2, int nw) {
  if (n1 != n2 || n1 != nw)
    throw ConfigError("clustering needs equal numbers of strong-cell1, strong-cell2 and weak UEs");
  if (n1 < 1) throw ConfigError("clustering needs at least one UE per set");
  std::vector<int> p2(n1), pw(n1);
  std::iota(p2.begin(), p2.end(), 0);
  std::vector<Clustering> out;
  do {
    std::iota(pw.begin(), pw.end(), 0);
    do {
      Clustering c(n1);
      for (int i = 0; i < n1; ++i) c[i] = {i, p2[i], pw[i]};
      out.push_back(std::move(c));
    } while (std::next_permutation(pw.begin(), pw.end()));
  } while (std::next_permutation(p2.begin(), p2.end()));
  return out;
}

ClusterOutcome evaluate_cluster(const Cluster& c, const MultiUserChannel& mu,
                                const SystemParams& sp, Scheme s, Objective obj, int n_clusters) {
  SystemParams sub = sp;
  sub.bandwidth = sp.bandwidth / n_clusters;
  const ChannelState ch = mu.cluster_channel(c);
  const RfState rf = make_rf_state(ch, mu.rf1.at(c.strong1).at(c.weak),
                                   mu.rf2.at(c.strong2).at(c.weak), sub);
  ClusterOutcome out;
  try {
    const SchemeOutcome o = run_scheme(s, obj, ch, sub, rf);
    out.feasible = o.feasible;
    out.value = o.feasible ? o.objective : 0.0;
  } catch (const DegenerateChannelError&) {
    out.degenerate = true;
  }
  return out;
}

double cluster_value(const Cluster& c, const MultiUserChannel& mu, const SystemParams& sp,
                     Scheme s, Objective obj, int n_clusters) {
  return evaluate_cluster(c, mu, sp, s, obj, n_clusters).value;
}

namespace {

/// value[i][j][l] for every possible triple.
struct ValueTable {
  int n;
  std::vector<double> v;
  std::vector<char> ok;
  double at(int i, int j, int l) const { return v[(i * n + j) * n + l]; }
  bool feasible(int i, int j, int l) const { return ok[(i * n + j) * n + l] != 0; }
};

ValueTable tabulate(const MultiUserChannel& mu, const SystemParams& sp, Scheme s, Objective obj) {
  const int n = mu.size();
  if (static_cast<int>(mu.strong2.size()) != n || static_cast<int>(mu.weak.size()) != n)
    throw ConfigError("clustering needs equal numbers of strong-cell1, strong-cell2 and weak UEs");
  ValueTable t{n, std::vector<double>(static_cast<std::size_t>(n * n * n)),
               std::vector<char>(static_cast<std::size_t>(n * n * n))};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const ClusterOutcome o = evaluate_cluster({i, j, l}, mu, sp, s, obj, n);
        t.v[(i * n + j) * n + l] = o.value;
        t.ok[(i * n + j) * n + l] = o.feasible;
      }
  return t;
}

ClusteringResult score(const Clustering& c, const ValueTable& t, Objective obj) {
  ClusteringResult r;
  r.clustering = c;
  r.total = obj == Objective::sum ? 0.0 : std::numeric_limits<double>::infinity();
  for (const Cluster& k : c) {
    const double v = t.at(k.strong1, k.strong2, k.weak);
    r.total = obj == Objective::sum ? r.total + v : std::min(r.total, v);
    r.all_feasible = r.all_feasible && t.feasible(k.strong1, k.strong2, k.weak);
  }
  return r;
}

ClusteringResult best_enumerated(const ValueTable& t, Objective obj) {
  ClusteringResult best;
  best.total = -1.0;
  for (const Clustering& c : enumerate_clusterings(t.n, t.n, t.n)) {
    ClusteringResult r = score(c, t, obj);
    if (r.total > best.total) best = std::move(r);
  }
  return best;
}

ClusteringResult best_assignment(const ValueTable& t, Objective obj) {
  const int n = t.n;
  using Matrix = std::vector<std::vector<double>>;
  Matrix pair(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double m = 0.0;
      for (int l = 0; l < n; ++l) m = std::max(m, t.at(i, j, l));
      pair[i][j] = m;
    }
  std::vector<int> p2 = hungarian_max(pair);
  std::vector<int> pw(n);
  const auto assign_weak = [&] {
    Matrix w(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) w[i][l] = t.at(i, p2[i], l);
    pw = hungarian_max(w);
  };
  const auto assign_strong2 = [&] {
    Matrix w(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i][j] = t.at(i, j, pw[i]);
    p2 = hungarian_max(w);
  };
  const auto build = [&] {
    Clustering c(n);
    for (int i = 0; i < n; ++i) c[i] = {i, p2[i], pw[i]};
    return score(c, t, obj);
  };
  assign_weak();
  ClusteringResult best = build();
  for (int iter = 0; iter < 4 * n + 4; ++iter) {
    assign_strong2();
    assign_weak();
    ClusteringResult r = build();
    if (!(r.total > best.total)) break;
    best = std::move(r);
  }
  return best;
}

}  // namespace

ClusteringResult optimal_uc_enumerate(const MultiUserChannel& mu, const SystemParams& sp,
                                      Scheme s, Objective obj) {
  return best_enumerated(tabulate(mu, sp, s, obj), obj);
}

ClusteringResult optimal_uc_assignment(const MultiUserChannel& mu, const SystemParams& sp,
                                       Scheme s, Objective obj) {
  return best_assignment(tabulate(mu, sp, s, obj), obj);
}

ClusteringResult optimal_uc(const MultiUserChannel& mu, const SystemParams& sp, Scheme s,
                            Objective obj) {
  const ValueTable t = tabulate(mu, sp, s, obj);
  // (n!)^2 clusterings: enumerate while that stays small.
  return t.n <= 4 ? best_enumerated(t, obj) : best_assignment(t, obj);
}

ClusteringResult random_uc(std::uint64_t seed, const MultiUserChannel& mu, const SystemParams& sp,
                           Scheme s, Objective obj) {
  const ValueTable t = tabulate(mu, sp, s, obj);
  std::mt19937_64 rng(seed);
  std::vector<int> p2(t.n), pw(t.n);
  std::iota(p2.begin(), p2.end(), 0);
  std::iota(pw.begin(), pw.end(), 0);
  std::shuffle(p2.begin(), p2.end(), rng);
  std::shuffle(pw.begin(), pw.end(), rng);
  Clustering c(t.n);
  for (int i = 0; i < t.n; ++i) c[i] = {i, p2[i], pw[i]};
  return score(c, t, obj);
}

std::vector<int> hungarian_max(const std::vector<std::vector<double>>& weight) {
  const int n = static_cast<int>(weight.size());
  if (n == 0) return {};
  double top = 0.0;
  for (const auto& row : weight) {
    if (static_cast<int>(row.size()) != n) throw DomainError("hungarian_max: matrix not square");
    for (double w : row) top = std::max(top, w);
  }
  // Minimum-cost assignment on cost = top - weight, 1-based potentials.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1), v(n + 1);
  std::vector<int> p(n + 1), way(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = (top - weight[i0 - 1][j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col(n);
  for (int j = 1; j <= n; ++j) col[p[j] - 1] = j - 1;
  return col;
}

}  // namespace vlcnoma
