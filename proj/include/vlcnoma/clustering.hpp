#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vlcnoma/schemes.hpp"

namespace vlcnoma {

/// One strong UE from each cell plus one weak UE, by index within each set.
struct Cluster {
  int strong1 = 0;
  int strong2 = 0;
  int weak = 0;
  bool operator==(const Cluster& o) const {
    return strong1 == o.strong1 && strong2 == o.strong2 && weak == o.weak;
  }
};

/// Sorted by strong1 index, one entry per strong1 UE.
using Clustering = std::vector<Cluster>;

/// Every gain needed to evaluate any cluster.
struct MultiUserChannel {
  std::vector<std::array<LinkGain, 2>> strong1;  // [ue][ap]
  std::vector<std::array<LinkGain, 2>> strong2;
  std::vector<std::array<LinkGain, 2>> weak;
  std::vector<std::vector<double>> rf1;  // |g|^2, [strong1 ue][weak ue]
  std::vector<std::vector<double>> rf2;  // [strong2 ue][weak ue]

  int size() const { return static_cast<int>(strong1.size()); }
  ChannelState cluster_channel(const Cluster& c) const;
};

/// All (n!)^2 ways to split equal-size sets into disjoint triples.
std::vector<Clustering> enumerate_clusterings(int n_strong1, int n_strong2, int n_weak);

struct ClusterOutcome {
  double value = 0.0;
  bool feasible = false;
  bool degenerate = false;
};

ClusterOutcome evaluate_cluster(const Cluster& c, const MultiUserChannel& mu,
                                const SystemParams& sp, Scheme s, Objective obj, int n_clusters);

/// Solver value of one cluster on its equal share of B_v (B_r is not split);
/// 0 when the cluster is infeasible or ZF-degenerate.
double cluster_value(const Cluster& c, const MultiUserChannel& mu, const SystemParams& sp,
                     Scheme s, Objective obj, int n_clusters);

struct ClusteringResult {
  Clustering clustering;
  double total = 0.0;  // sum of cluster values, or their minimum under Objective::min
  bool all_feasible = true;
};

/// Maximizes by exhaustive enumeration.
ClusteringResult optimal_uc_enumerate(const MultiUserChannel& mu, const SystemParams& sp,
                                      Scheme s, Objective obj);
/// Maximizes with assignment solvers: strong1-strong2 pairing by the Hungarian
/// method on best-weak-UE pair values, then weak-UE assignment to the pairs,
/// then alternating re-assignment of either set until no improvement.
ClusteringResult optimal_uc_assignment(const MultiUserChannel& mu, const SystemParams& sp,
                                       Scheme s, Objective obj);
ClusteringResult optimal_uc(const MultiUserChannel& mu, const SystemParams& sp, Scheme s,
                            Objective obj);
/// Uniform pick among all valid clusterings.
ClusteringResult random_uc(std::uint64_t seed, const MultiUserChannel& mu, const SystemParams& sp,
                           Scheme s, Objective obj);

/// Maximum-weight perfect matching of a square matrix; returns the column for each row.
std::vector<int> hungarian_max(const std::vector<std::vector<double>>& weight);

}  // namespace vlcnoma
