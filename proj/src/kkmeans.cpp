#include "gowerk/kkmeans.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "gowerk/transforms.hpp"

namespace gowerk {

namespace {

void check_index(const KernelMatrix& k, Index i) {
  if (i < 0 || i >= k.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "point index " + std::to_string(i) + " out of range");
  }
}

void check_assignment(const KernelMatrix& k, std::span<const int> a, int k_clusters) {
  if (k_clusters < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1");
  if (static_cast<Index>(a.size()) != k.size()) {
    std::ostringstream os;
    os << "assignment has " << a.size() << " labels, kernel has " << k.size()
       << " points";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || a[i] > k_clusters) {
      std::ostringstream os;
      os << "label " << a[i] << " of point " << i << " is outside [1, "
         << k_clusters << "]";
      throw Error(ErrorCode::LabelOutOfRange, os.str());
    }
  }
}

// Per-cluster sums that make every point-to-centroid distance O(1):
//   row(i, j)  = Σ_{h ∈ C_j} k_hi
//   inner(j)   = Σ_{r,s ∈ C_j} k_rs
struct ClusterStats {
  std::vector<int> count;
  std::vector<double> inner;
  Matrix row;

  ClusterStats(const KernelMatrix& k, std::span<const int> a, int clusters)
      : count(static_cast<std::size_t>(clusters), 0),
        inner(static_cast<std::size_t>(clusters), 0.0),
        row(Matrix::Zero(k.size(), clusters)) {
    const Index m = k.size();
    for (Index h = 0; h < m; ++h) {
      const Index j = a[static_cast<std::size_t>(h)] - 1;
      ++count[static_cast<std::size_t>(j)];
      for (Index i = 0; i < m; ++i) row(i, j) += k(h, i);
    }
    for (Index h = 0; h < m; ++h) {
      const Index j = a[static_cast<std::size_t>(h)] - 1;
      inner[static_cast<std::size_t>(j)] += row(h, j);
    }
  }

  // Requires count[j] > 0.
  double distance(const KernelMatrix& k, Index i, Index j) const {
    const double n = count[static_cast<std::size_t>(j)];
    return k(i, i) - 2.0 * row(i, j) / n + inner[static_cast<std::size_t>(j)] / (n * n);
  }
};

double cost_from_stats(const KernelMatrix& k, std::span<const int> a,
                       const ClusterStats& stats) {
  double total = 0.0;
  for (Index i = 0; i < k.size(); ++i) {
    total += stats.distance(k, i, a[static_cast<std::size_t>(i)] - 1);
  }
  return total;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Portable draws: std::uniform_*_distribution differ between standard
// libraries, which would break cross-platform golden results.
class Stream {
 public:
  Stream(std::uint64_t seed, int restart)
      : engine_(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(restart))) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

double singleton_distance(const KernelMatrix& k, Index i, Index s) {
  return k(i, i) + k(s, s) - 2.0 * k(i, s);
}

std::vector<Index> choose_seeds(const KernelMatrix& k, int clusters,
                                InitMethod init, Stream& rng) {
  const Index m = k.size();
  std::vector<Index> seeds;
  std::vector<bool> taken(static_cast<std::size_t>(m), false);

  auto pick_uniform_untaken = [&]() {
    const std::uint64_t free = static_cast<std::uint64_t>(m) - seeds.size();
    std::uint64_t skip = rng.below(free);
    for (Index i = 0; i < m; ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      if (skip-- == 0) return i;
    }
    return m - 1;  // unreachable
  };

  const Index first = pick_uniform_untaken();
  seeds.push_back(first);
  taken[static_cast<std::size_t>(first)] = true;
  if (init == InitMethod::random) {
    while (static_cast<int>(seeds.size()) < clusters) {
      const Index next = pick_uniform_untaken();
      seeds.push_back(next);
      taken[static_cast<std::size_t>(next)] = true;
    }
    return seeds;
  }

  // k-means++ in feature space; negative squared distances (indefinite
  // kernels) count as zero probability mass.
  std::vector<double> nearest(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    nearest[static_cast<std::size_t>(i)] =
        std::max(0.0, singleton_distance(k, i, first));
  }
  while (static_cast<int>(seeds.size()) < clusters) {
    double total = 0.0;
    for (Index i = 0; i < m; ++i) {
      if (!taken[static_cast<std::size_t>(i)]) total += nearest[static_cast<std::size_t>(i)];
    }
    Index next = -1;
    if (total > 0.0) {
      double target = rng.unit() * total;
      for (Index i = 0; i < m; ++i) {
        if (taken[static_cast<std::size_t>(i)]) continue;
        const double w = nearest[static_cast<std::size_t>(i)];
        if (w <= 0.0) continue;
        next = i;
        if (target < w) break;
        target -= w;
      }
    }
    if (next < 0) next = pick_uniform_untaken();
    seeds.push_back(next);
    taken[static_cast<std::size_t>(next)] = true;
    for (Index i = 0; i < m; ++i) {
      auto& n = nearest[static_cast<std::size_t>(i)];
      n = std::min(n, std::max(0.0, singleton_distance(k, i, next)));
    }
  }
  return seeds;
}

// Moves the point farthest from its own centroid into each empty cluster.
void fill_empty_clusters(const KernelMatrix& k, Assignment& a, int clusters) {
  const Index m = k.size();
  for (int j = 0; j < clusters; ++j) {
    ClusterStats stats(k, a, clusters);
    if (stats.count[static_cast<std::size_t>(j)] > 0) continue;
    Index far = -1;
    double far_dist = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      const int own = a[static_cast<std::size_t>(i)] - 1;
      if (stats.count[static_cast<std::size_t>(own)] < 2) continue;
      const double dist = stats.distance(k, i, own);
      if (dist > far_dist) {
        far_dist = dist;
        far = i;
      }
    }
    if (far < 0) return;  // fewer points than clusters; cannot happen for k ≤ m
    a[static_cast<std::size_t>(far)] = j + 1;
  }
}

void validate_k(const KernelMatrix& k, int clusters) {
  if (clusters < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1");
  if (clusters > k.size()) {
    std::ostringstream os;
    os << "k = " << clusters << " exceeds the number of points " << k.size();
    throw Error(ErrorCode::KTooLarge, os.str());
  }
}

}  // namespace

WeightVector WeightVector::from(Vector weights) {
  for (Index i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights(i)) || weights(i) < 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "weights must be finite and non-negative");
    }
  }
  return WeightVector(std::move(weights));
}

Assignment canonicalize_labels(std::span<const int> assignments) {
  std::vector<std::pair<int, int>> seen;  // original label -> canonical
  Assignment out;
  out.reserve(assignments.size());
  for (int label : assignments) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& p) { return p.first == label; });
    if (it == seen.end()) {
      seen.emplace_back(label, static_cast<int>(seen.size()) + 1);
      out.push_back(seen.back().second);
    } else {
      out.push_back(it->second);
    }
  }
  return out;
}

double point_to_centroid_sq(const KernelMatrix& k, Index i,
                            std::span<const Index> cluster) {
  check_index(k, i);
  if (cluster.empty()) throw Error(ErrorCode::EmptyCluster, "cluster is empty");
  double cross = 0.0;
  double inner = 0.0;
  for (Index h : cluster) {
    check_index(k, h);
    cross += k(h, i);
    for (Index s : cluster) inner += k(h, s);
  }
  const double n = static_cast<double>(cluster.size());
  return k(i, i) - 2.0 * cross / n + inner / (n * n);
}

double point_to_weighted_centroid_sq(const KernelMatrix& k, Index i,
                                     std::span<const Index> cluster,
                                     const WeightVector& w) {
  check_index(k, i);
  if (w.size() != k.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weight vector length differs from m");
  }
  if (cluster.empty()) throw Error(ErrorCode::EmptyCluster, "cluster is empty");
  double total_weight = 0.0;
  double cross = 0.0;
  double inner = 0.0;
  for (Index h : cluster) {
    check_index(k, h);
    const double wh = w.values()(h);
    total_weight += wh;
    cross += wh * k(h, i);
    for (Index s : cluster) inner += wh * w.values()(s) * k(h, s);
  }
  if (total_weight <= 0.0) {
    throw Error(ErrorCode::ZeroWeightCluster, "cluster weights sum to zero");
  }
  return k(i, i) - 2.0 * cross / total_weight +
         inner / (total_weight * total_weight);
}

double cost_of(const KernelMatrix& k, std::span<const int> assignments,
               int k_clusters) {
  check_assignment(k, assignments, k_clusters);
  return cost_from_stats(k, assignments, ClusterStats(k, assignments, k_clusters));
}

double weighted_cost_of(const KernelMatrix& k, std::span<const int> assignments,
                        int k_clusters, const WeightVector& w) {
  check_assignment(k, assignments, k_clusters);
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(k_clusters));
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    members[static_cast<std::size_t>(assignments[i] - 1)].push_back(
        static_cast<Index>(i));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    total += point_to_weighted_centroid_sq(
        k, static_cast<Index>(i),
        members[static_cast<std::size_t>(assignments[i] - 1)], w);
  }
  return total;
}

std::string_view to_string(InitMethod init) noexcept {
  return init == InitMethod::random ? "random" : "kmeans++";
}

InitMethod parse_init_method(std::string_view text) {
  if (text == "kmeans++" || text == "kmeanspp") return InitMethod::kmeans_plus_plus;
  if (text == "random") return InitMethod::random;
  throw Error(ErrorCode::InvalidArgument,
              "unknown init method '" + std::string(text) + "'");
}

LloydRun lloyd_run(const KernelMatrix& k, const LloydOptions& options, int restart) {
  validate_k(k, options.k);
  if (options.max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
  }
  const Index m = k.size();
  const int clusters = options.k;
  Stream rng(options.seed, restart);

  const std::vector<Index> seeds = choose_seeds(k, clusters, options.init, rng);

  LloydRun run;
  run.assignments.assign(static_cast<std::size_t>(m), 1);
  for (Index i = 0; i < m; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < clusters; ++j) {
      const double dist = singleton_distance(k, i, seeds[static_cast<std::size_t>(j)]);
      if (dist < best) {
        best = dist;
        run.assignments[static_cast<std::size_t>(i)] = j + 1;
      }
    }
  }
  fill_empty_clusters(k, run.assignments, clusters);
  run.cost_history.push_back(cost_of(k, run.assignments, clusters));

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    run.iterations = iter;
    const ClusterStats stats(k, run.assignments, clusters);
    Assignment next(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int label = run.assignments[static_cast<std::size_t>(i)];
      for (int j = 0; j < clusters; ++j) {
        if (stats.count[static_cast<std::size_t>(j)] == 0) continue;
        const double dist = stats.distance(k, i, j);
        if (dist < best) {
          best = dist;
          label = j + 1;
        }
      }
      next[static_cast<std::size_t>(i)] = label;
    }
    fill_empty_clusters(k, next, clusters);
    if (next == run.assignments) break;
    run.assignments = std::move(next);
    run.cost_history.push_back(cost_of(k, run.assignments, clusters));
  }
  run.cost = run.cost_history.back();
  return run;
}

Clustering lloyd(const KernelMatrix& k, const LloydOptions& options) {
  validate_k(k, options.k);
  if (options.restarts < 1) {
    throw Error(ErrorCode::InvalidArgument, "restarts must be positive");
  }
  const auto restarts = static_cast<std::size_t>(options.restarts);
  std::vector<LloydRun> runs(restarts);

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, restarts));

  if (threads <= 1) {
    for (std::size_t r = 0; r < restarts; ++r) {
      runs[r] = lloyd_run(k, options, static_cast<int>(r));
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < restarts; r = next++) {
          try {
            runs[r] = lloyd_run(k, options, static_cast<int>(r));
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    const double margin = 1e-12 * std::max(1.0, std::abs(runs[best].cost));
    if (runs[r].cost < runs[best].cost - margin) best = r;
  }

  Clustering out;
  out.assignments = canonicalize_labels(runs[best].assignments);
  out.k = options.k;
  out.cost = runs[best].cost;
  out.iterations = runs[best].iterations;
  out.restarts_used = options.restarts;
  out.seed = options.seed;
  return out;
}

void for_each_partition(Index m, int k,
                        const std::function<void(const Assignment&)>& visit) {
  if (k < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1");
  Assignment a(static_cast<std::size_t>(m), 1);
  if (m == 0) {
    visit(a);
    return;
  }
  // Restricted growth strings: a[0] = 1, a[i] ≤ 1 + max(a[0..i-1]).
  std::vector<int> prefix_max(static_cast<std::size_t>(m), 1);
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == a.size()) {
      visit(a);
      return;
    }
    const int limit = std::min(k, prefix_max[i - 1] + 1);
    for (int label = 1; label <= limit; ++label) {
      a[i] = label;
      prefix_max[i] = std::max(prefix_max[i - 1], label);
      self(self, i + 1);
    }
  };
  recurse(recurse, 1);
}

namespace {

void check_exhaustive(const KernelMatrix& k, int k_clusters) {
  if (k_clusters < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1");
  if (k.size() > kExhaustiveMaxPoints) {
    throw Error(ErrorCode::TooManyPoints,
                "exhaustive search is limited to " +
                    std::to_string(kExhaustiveMaxPoints) + " points");
  }
}

bool strictly_below(double candidate, double incumbent, double rel_tie) {
  return candidate < incumbent - rel_tie * std::max(1.0, std::abs(incumbent));
}

}  // namespace

Clustering exhaustive_best(const KernelMatrix& k, int k_clusters) {
  check_exhaustive(k, k_clusters);
  Clustering best;
  best.k = k_clusters;
  best.cost = std::numeric_limits<double>::infinity();
  for_each_partition(k.size(), k_clusters, [&](const Assignment& a) {
    const double c = cost_of(k, a, k_clusters);
    if (best.assignments.empty() || strictly_below(c, best.cost, kCostTieTolerance)) {
      best.cost = c;
      best.assignments = a;
    }
  });
  return best;
}

std::vector<Assignment> optimal_partitions(const KernelMatrix& k, int k_clusters,
                                           double rel_tie) {
  check_exhaustive(k, k_clusters);
  std::vector<std::pair<double, Assignment>> all;
  double lowest = std::numeric_limits<double>::infinity();
  for_each_partition(k.size(), k_clusters, [&](const Assignment& a) {
    const double c = cost_of(k, a, k_clusters);
    lowest = std::min(lowest, c);
    all.emplace_back(c, a);
  });
  std::vector<Assignment> out;
  for (auto& [c, a] : all) {
    if (!strictly_below(lowest, c, rel_tie)) out.push_back(std::move(a));
  }
  return out;
}

KernelMatrix shift_kernel_squared_distances(const KernelMatrix& k, double delta) {
  const Index m = k.size();
  Matrix a = squared_distances_of(k);
  a.array() += delta;
  a.diagonal().setZero();
  a *= -0.5;
  if (m == 0) return KernelMatrix::from(a);
  const Vector row_mean = a.rowwise().mean();
  const double grand = row_mean.mean();
  Matrix f(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) f(i, j) = a(i, j) - row_mean(i) - row_mean(j) + grand;
  }
  return KernelMatrix::from(std::move(f));
}

ShiftCostCheck shift_cost_check(const KernelMatrix& k,
                                std::span<const int> assignments, int k_clusters,
                                double sigma) {
  check_assignment(k, assignments, k_clusters);
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be non-negative");
  }
  std::vector<int> sizes(static_cast<std::size_t>(k_clusters), 0);
  for (int label : assignments) ++sizes[static_cast<std::size_t>(label - 1)];
  for (int j = 0; j < k_clusters; ++j) {
    if (sizes[static_cast<std::size_t>(j)] == 0) {
      throw Error(ErrorCode::EmptyCluster,
                  "cluster " + std::to_string(j + 1) + " is empty");
    }
  }

  ShiftCostCheck out;
  out.original = cost_of(k, assignments, k_clusters);
  out.shifted =
      cost_of(shift_kernel_squared_distances(k, 2.0 * sigma), assignments, k_clusters);
  out.predicted_delta = sigma * static_cast<double>(k.size() - k_clusters);
  const double scale = std::max({1.0, std::abs(out.original), std::abs(out.shifted)});
  out.holds =
      std::abs(out.shifted - out.original - out.predicted_delta) <= 1e-6 * scale;
  return out;
}

}  // namespace gowerk
