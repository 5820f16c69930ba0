#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "gowerk/symmat.hpp"

namespace gowerk {

/// Cluster labels are 1-based: a point with label j belongs to cluster j.
using Assignment = std::vector<int>;

struct Clustering {
  Assignment assignments;  // canonical: labels in order of first occurrence
  int k = 0;
  double cost = 0.0;
  int iterations = 0;
  int restarts_used = 0;
  std::uint64_t seed = 0;
};

/// Non-negative per-point weights.
class WeightVector {
 public:
  WeightVector() = default;
  /// Throws InvalidArgument on negative or non-finite weights.
  static WeightVector from(Vector weights);

  Index size() const noexcept { return weights_.size(); }
  const Vector& values() const noexcept { return weights_; }

 private:
  explicit WeightVector(Vector w) : weights_(std::move(w)) {}
  Vector weights_;
};

/// Relabels so that labels appear in increasing order of first occurrence.
Assignment canonicalize_labels(std::span<const int> assignments);

/// Squared feature-space distance from point i to the mean of the points
/// in `cluster`, using only kernel entries:
///   k_ii − (2/|C|) Σ_h k_hi + (1/|C|²) Σ_r Σ_s k_rs.
/// Not clamped: on an indefinite kernel the value can be negative.
double point_to_centroid_sq(const KernelMatrix& k, Index i,
                            std::span<const Index> cluster);

/// Same, against the weighted center Σ w_h Φ(h) / Σ w_h of the cluster.
/// Throws ZeroWeightCluster if the cluster's weights sum to zero.
double point_to_weighted_centroid_sq(const KernelMatrix& k, Index i,
                                     std::span<const Index> cluster,
                                     const WeightVector& w);

/// Σ_i point_to_centroid_sq(K, i, C_{a(i)}). Empty clusters contribute 0.
double cost_of(const KernelMatrix& k, std::span<const int> assignments, int k_clusters);

/// Each point measured against its own cluster's weighted center.
double weighted_cost_of(const KernelMatrix& k, std::span<const int> assignments,
                        int k_clusters, const WeightVector& w);

enum class InitMethod { kmeans_plus_plus, random };

std::string_view to_string(InitMethod init) noexcept;
InitMethod parse_init_method(std::string_view text);

struct LloydOptions {
  int k = 2;
  std::uint64_t seed = 0;
  int restarts = 10;
  int max_iter = 100;
  InitMethod init = InitMethod::kmeans_plus_plus;
  // Worker threads for restarts; 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// One restart of Lloyd's algorithm in kernel space.
struct LloydRun {
  Assignment assignments;  // raw labels, not canonicalized
  double cost = 0.0;
  int iterations = 0;
  std::vector<double> cost_history;  // cost after each assignment step
};

/// Runs restart number `restart` of the given options. The random stream
/// depends only on (options.seed, restart).
LloydRun lloyd_run(const KernelMatrix& k, const LloydOptions& options, int restart);

/// Best of options.restarts runs (lowest cost; costs equal to within 1e-12
/// relative go to the lower restart index). Deterministic for a fixed seed
/// whatever the thread count.
/// Throws InvalidK for k < 1 and KTooLarge for k > m.
Clustering lloyd(const KernelMatrix& k, const LloydOptions& options);

/// Calls `visit` once per partition of {0..m-1} into at most k nonempty
/// parts, encoded as a canonical 1-based assignment.
void for_each_partition(Index m, int k,
                        const std::function<void(const Assignment&)>& visit);

inline constexpr Index kExhaustiveMaxPoints = 12;

inline constexpr double kCostTieTolerance = 1e-9;

/// Global minimum of cost_of over every partition into ≤ k nonempty parts.
/// Costs within kCostTieTolerance·max(1, |cost|) count as ties and the
/// first partition in enumeration order wins.
/// Throws TooManyPoints for m > 12.
Clustering exhaustive_best(const KernelMatrix& k, int k_clusters);

/// Every partition whose cost ties the global minimum (same tolerance),
/// in enumeration order. Symmetric inputs often have several.
std::vector<Assignment> optimal_partitions(const KernelMatrix& k, int k_clusters,
                                           double rel_tie = kCostTieTolerance);

struct ShiftCostCheck {
  double original = 0.0;
  double shifted = 0.0;
  double predicted_delta = 0.0;
  bool holds = false;  // |shifted − original − predicted| ≤ 1e-6 relative
};

/// Cost of a partition before and after adding 2σ to every off-diagonal
/// squared distance encoded by K. The shift law predicts a difference of
/// σ·(m − k). Throws EmptyCluster if any of the k clusters is empty.
ShiftCostCheck shift_cost_check(const KernelMatrix& k,
                                std::span<const int> assignments, int k_clusters,
                                double sigma);

/// Centered kernel of the squared distances encoded by K with `delta` added
/// off-diagonal. Works for indefinite K since no square roots are taken.
KernelMatrix shift_kernel_squared_distances(const KernelMatrix& k, double delta);

}  // namespace gowerk
