#include "gowerk/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/QR>

#include "gowerk/euclidesation.hpp"
#include "gowerk/kkmeans.hpp"
#include "gowerk/reference_data.hpp"
#include "gowerk/transforms.hpp"

namespace gowerk::repro {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string labels(std::span<const int> a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(a[i]);
  }
  return out + "]";
}

class Recorder {
 public:
  explicit Recorder(std::vector<Check>& out) : out_(out) {}

  void section(std::string name) { section_ = std::move(name); }

  void add(std::string id, bool pass, std::string detail) {
    out_.push_back({std::move(id), section_, pass, std::move(detail)});
  }

  void near(std::string id, double value, double expected, double tol) {
    const bool pass = std::abs(value - expected) <= tol;
    add(std::move(id), pass,
        "got " + num(value) + ", expected " + num(expected) + " ± " + num(tol));
  }

  void matrix_near(std::string id, const Matrix& value, const Matrix& expected,
                   double tol) {
    const double err = (value - expected).cwiseAbs().maxCoeff();
    add(std::move(id), err <= tol,
        "max entry error " + num(err) + " (tolerance " + num(tol) + ")");
  }

  // Runs `body`; an exception turns into a failed check instead of
  // aborting the whole report.
  void guarded(const std::string& id, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(id, false, std::string("exception: ") + e.what());
    }
  }

 private:
  std::vector<Check>& out_;
  std::string section_;
};

DissimilarityMatrix dissimilarity(const Matrix& m) {
  return validate_dissimilarity(SquareMatrix::from(m));
}

double sum_sq_diff(const Matrix& a, const Matrix& b) {
  return (a - b).squaredNorm();
}

// Exact k-means optimum over explicit coordinates: centroids are formed
// from the rows, no kernel entries involved.
Assignment coordinate_kmeans_optimum(const Matrix& points, int k) {
  const Index m = points.rows();
  Assignment best;
  double best_cost = std::numeric_limits<double>::infinity();
  for_each_partition(m, k, [&](const Assignment& a) {
    double cost = 0.0;
    for (int j = 1; j <= k; ++j) {
      Eigen::RowVectorXd centroid = Eigen::RowVectorXd::Zero(points.cols());
      int n = 0;
      for (Index i = 0; i < m; ++i) {
        if (a[static_cast<std::size_t>(i)] == j) {
          centroid += points.row(i);
          ++n;
        }
      }
      if (n == 0) continue;
      centroid /= n;
      for (Index i = 0; i < m; ++i) {
        if (a[static_cast<std::size_t>(i)] == j) cost += (points.row(i) - centroid).squaredNorm();
      }
    }
    if (best.empty() || cost < best_cost - 1e-9 * std::max(1.0, best_cost)) {
      best_cost = cost;
      best = a;
    }
  });
  return best;
}

Matrix round_to(const Vector& v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return (v * scale).array().round().matrix() / scale;
}

void run_section5(Recorder& rec, const Options& opt) {
  using namespace reference;
  rec.section(kSection5);

  rec.add("s5.s_vectors_round_to_published",
          (round_to(s(), 2) - published_s()).cwiseAbs().maxCoeff() < 1e-12 &&
              (round_to(s_prime(), 2) - published_s_prime()).cwiseAbs().maxCoeff() < 1e-12,
          "fixture s and s' agree with the published two-decimal vectors");

  const DissimilarityMatrix d0 = row_distances(points());
  rec.matrix_near("s5.distances_match_published", d0.values(), published_distances(),
                  opt.print_tol);

  struct Variant {
    const char* suffix;
    Vector s;
    Matrix kernel;
    double published_error;
  };
  const Variant variants[] = {
      {"", reference::s(), published_kernel(), kPublishedRoundTripError},
      {"_prime", s_prime(), published_kernel_prime(), kPublishedRoundTripErrorPrime},
  };

  const Assignment expected(kEuclideanClustering.begin(), kEuclideanClustering.end());
  for (const auto& v : variants) {
    const std::string tag = v.suffix;
    rec.guarded("s5.pipeline" + tag, [&] {
      const auto start = std::chrono::steady_clock::now();
      const KernelMatrix f = gower_transform(d0, SVector::from(v.s));
      const Embedding y = embed(f, opt.eps_psd);
      const DissimilarityMatrix back = row_distances(y.points);
      const double err = sum_sq_diff(back.values(), d0.values());
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      rec.matrix_near("s5.kernel" + tag, f.values(), v.kernel, opt.print_tol);
      rec.add("s5.embedding_rank" + tag, y.rank() == 4,
              "rank " + std::to_string(y.rank()) + ", expected 4");
      rec.add("s5.roundtrip" + tag, err <= 1e-12,
              "sum of squared differences " + num(err) + " (published " +
                  num(v.published_error) + ", limit 1e-12)");
      rec.add("s5.roundtrip_runtime" + tag, secs < 1.0, "took " + num(secs) + " s");

      LloydOptions lo;
      lo.k = 2;
      lo.restarts = 100;
      lo.seed = opt.seed;
      lo.threads = opt.threads;
      const Clustering kernel_cl = lloyd(f, lo);
      rec.add("s5.kernel_kmeans" + tag, kernel_cl.assignments == expected,
              "kernel k-means " + labels(kernel_cl.assignments) + ", expected " +
                  labels(expected));
      const Assignment coord = coordinate_kmeans_optimum(y.points, 2);
      rec.add("s5.kmeans_on_embedding" + tag, coord == expected,
              "k-means on embedding " + labels(coord));
    });
  }

  rec.guarded("s5.kmeans_on_points", [&] {
    const Assignment coord = coordinate_kmeans_optimum(points(), 2);
    rec.add("s5.kmeans_on_points", coord == expected, "k-means on X " + labels(coord));
  });
}

void run_section6(Recorder& rec, const Options& opt) {
  using namespace reference;
  rec.section(kSection6);
  const DissimilarityMatrix ne = dissimilarity(non_euclidean_distances());

  const KernelMatrix ne_f = centered_transform(ne);
  rec.matrix_near("s6.kernel_non_euclidean", ne_f.values(), published_non_euclidean_kernel(),
                  opt.print_tol);
  rec.near("s6.lambda_min_non_euclidean", min_eigenvalue(ne_f), -kSigma, 1e-3);
  rec.near("s6.gower_sigma", gower_sigma(ne), kSigma, 1e-3);
  const EuclideanVerdict verdict = is_euclidean(ne, opt.eps_psd);
  rec.add("s6.verdict_non_euclidean", !verdict.euclidean,
          "is_euclidean = " + std::string(verdict.euclidean ? "true" : "false"));

  const EuclidesationReport sigma_shift = euclidise(ne, ShiftMode::original_gower, opt.eps_psd);
  const KernelMatrix imp_f = centered_transform(sigma_shift.repaired);
  rec.matrix_near("s6.kernel_sigma_shift", imp_f.values(), published_sigma_shift_kernel(),
                  opt.print_tol);
  rec.near("s6.lambda_min_sigma_shift", sigma_shift.post_lambda_min, kSigmaShiftLambdaMin,
           1e-3);

  const EuclidesationReport corrected = euclidise(ne, ShiftMode::corrected, opt.eps_psd);
  const KernelMatrix e_f = centered_transform(corrected.repaired);
  rec.matrix_near("s6.kernel_two_sigma_shift", e_f.values(),
                  published_two_sigma_shift_kernel(), opt.print_tol);
  rec.near("s6.lambda_min_two_sigma_shift", corrected.post_lambda_min, 0.0, 1e-6);

  const WeightVector w = WeightVector::from(center_weights());
  const Assignment best(kBestPartition.begin(), kBestPartition.end());
  const Assignment halves(kHalvesPartition.begin(), kHalvesPartition.end());
  const Assignment alt_best{1, 2, 1, 1, 2, 1};

  const double c_ne_best = cost_of(ne_f, best, 2);
  const double c_e_best = cost_of(e_f, alt_best, 2);
  rec.near("s6.cost_best_non_euclidean", c_ne_best, kCostBestNonEuclidean, 0.01);
  rec.near("s6.cost_halves_non_euclidean", cost_of(ne_f, halves, 2), kCostHalvesNonEuclidean,
           0.01);
  const double weighted_ne = weighted_cost_of(ne_f, halves, 2, w);
  rec.near("s6.weighted_cost_non_euclidean", weighted_ne, kWeightedCostNonEuclidean, 0.01);
  rec.add("s6.weighted_centers_beat_kernel_kmeans", weighted_ne < c_ne_best,
          num(weighted_ne) + " < " + num(c_ne_best));
  rec.near("s6.cost_best_euclidised", c_e_best, kCostBestEuclidised, 0.01);
  rec.near("s6.cost_halves_euclidised", cost_of(e_f, halves, 2), kCostHalvesEuclidised, 0.01);
  rec.near("s6.weighted_cost_euclidised", weighted_cost_of(e_f, halves, 2, w),
           kWeightedCostEuclidised, 0.01);

  auto optimum_check = [&](const std::string& id, const KernelMatrix& f, double expected_cost,
                           const Assignment& published) {
    const Clustering ex = exhaustive_best(f, 2);
    const auto optima = optimal_partitions(f, 2);
    const bool contains =
        std::find(optima.begin(), optima.end(), published) != optima.end();
    rec.add(id, std::abs(ex.cost - expected_cost) <= 0.01 && contains,
            "exhaustive optimum " + num(ex.cost) + " over " + std::to_string(optima.size()) +
                " tied partition(s), published partition " + labels(published) +
                (contains ? " among them" : " not among them"));
  };
  optimum_check("s6.exhaustive_optimum_non_euclidean", ne_f, kCostBestNonEuclidean, best);
  optimum_check("s6.exhaustive_optimum_euclidised", e_f, kCostBestEuclidised, alt_best);

  LloydOptions lo;
  lo.k = 2;
  lo.restarts = 100;
  lo.seed = opt.seed;
  lo.threads = opt.threads;
  const Clustering cl = lloyd(ne_f, lo);
  const auto optima = optimal_partitions(ne_f, 2);
  rec.add("s6.kernel_kmeans_non_euclidean",
          std::abs(cl.cost - kCostBestNonEuclidean) <= 0.01 &&
              std::find(optima.begin(), optima.end(), cl.assignments) != optima.end(),
          "lloyd " + labels(cl.assignments) + " cost " + num(cl.cost));

  rec.near("s6.shift_law_published", kCostBestEuclidised - kCostBestNonEuclidean,
           kSigma * (6 - 2), 0.01);
  const ShiftCostCheck shift = shift_cost_check(ne_f, best, 2, gower_sigma(ne));
  rec.add("s6.shift_law_computed", shift.holds && std::abs(shift.shifted - kCostBestEuclidised) <= 0.01,
          "original " + num(shift.original) + ", shifted " + num(shift.shifted) +
              ", predicted delta " + num(shift.predicted_delta));
}

// ---- randomized property suites -------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double real(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  Matrix points(Index m, Index dim, double range) {
    Matrix p(m, dim);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < dim; ++j) p(i, j) = real(-range, range);
    return p;
  }
  // Valid s: random components shifted so they sum to one.
  SVector s_vector(Index m) {
    Vector u(m);
    for (Index i = 0; i < m; ++i) u(i) = real(-1.0, 1.0);
    u.array() += 1.0 / static_cast<double>(m) - u.mean();
    return SVector::from(u);
  }
  DissimilarityMatrix hollow_symmetric(Index m, double hi) {
    Matrix d = Matrix::Zero(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = i + 1; j < m; ++j) d(i, j) = d(j, i) = real(0.0, hi);
    return validate_dissimilarity(SquareMatrix::from(d));
  }
  Assignment full_partition(Index m, int k) {
    Assignment a(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) a[static_cast<std::size_t>(i)] = i < k ? static_cast<int>(i) + 1 : integer(1, k);
    return a;
  }

 private:
  std::mt19937_64 engine_;
};

void run_properties(Recorder& rec, const Options& opt) {
  rec.section(kProperties);
  Gen gen(opt.seed);
  const auto start = std::chrono::steady_clock::now();

  auto suite = [&](const std::string& id, int instances,
                   const std::function<bool(int)>& instance) {
    int failures = 0;
    std::string first_failure;
    for (int n = 0; n < instances; ++n) {
      bool ok = false;
      try {
        ok = instance(n);
      } catch (const std::exception& e) {
        if (first_failure.empty()) first_failure = e.what();
      }
      if (!ok) {
        ++failures;
        if (first_failure.empty()) first_failure = "instance " + std::to_string(n);
      }
    }
    rec.add(id, failures == 0,
            std::to_string(instances - failures) + "/" + std::to_string(instances) +
                " instances hold" + (failures ? " (first failure: " + first_failure + ")" : ""));
  };

  suite("prop.necessity", 200, [&](int) {
    const Index m = gen.integer(2, 12);
    const DissimilarityMatrix d = row_distances(gen.points(m, gen.integer(1, 5), 100.0));
    for (int t = 0; t < 5; ++t) {
      const EigenDecomposition eig = sym_eigen(gower_transform(d, gen.s_vector(m)));
      if (eig.eigenvalues(m - 1) < -opt.eps_psd * spectral_scale(eig.eigenvalues)) return false;
    }
    return true;
  });

  suite("prop.round_trip", 200, [&](int) {
    const Index m = gen.integer(2, 12);
    const DissimilarityMatrix d = row_distances(gen.points(m, gen.integer(1, 5), 100.0));
    const double scale = std::max(1.0, d.values().maxCoeff());
    const DissimilarityMatrix back = recover_distances(gower_transform(d, gen.s_vector(m)));
    return (back.values() - d.values()).cwiseAbs().maxCoeff() <= 1e-9 * scale;
  });

  suite("prop.sufficiency", 200, [&](int n) {
    const Index m = gen.integer(2, 12);
    // Odd instances: arbitrary hollow matrices made PSD by the 2σ repair,
    // so no coordinates exist up front.
    const DissimilarityMatrix d =
        n % 2 == 0 ? row_distances(gen.points(m, gen.integer(1, 5), 100.0))
                   : euclidise(gen.hollow_symmetric(m, 100.0), ShiftMode::corrected, opt.eps_psd)
                         .repaired;
    const Embedding y = embed(centered_transform(d), opt.eps_psd);
    return (row_distances(y.points).values() - d.values()).cwiseAbs().maxCoeff() <= 1e-7;
  });

  suite("prop.shift_equivalence", 200, [&](int) {
    const Index m = gen.integer(2, 12);
    const DissimilarityMatrix d = row_distances(gen.points(m, gen.integer(1, 5), 100.0));
    const double scale = std::max(1.0, d.values().maxCoeff());
    const Matrix a = recover_distances(gower_transform(d, gen.s_vector(m))).values();
    const Matrix b = recover_distances(gower_transform(d, gen.s_vector(m))).values();
    return (a - b).cwiseAbs().maxCoeff() <= 1e-9 * scale;
  });

  suite("prop.recombination", 200, [&](int) {
    const Index m = gen.integer(2, 12);
    const DissimilarityMatrix d = row_distances(gen.points(m, gen.integer(1, 5), 100.0));
    const SVector s = gen.s_vector(m);
    const SVector t = gen.s_vector(m);
    const Matrix id = Matrix::Identity(m, m);
    const Vector ones = Vector::Ones(m);
    const Matrix pt = id - ones * t.values().transpose();
    const Matrix ps = id - ones * s.values().transpose();
    if ((pt * ps - pt).cwiseAbs().maxCoeff() > 1e-12) return false;
    if ((ps * ones).cwiseAbs().maxCoeff() > 1e-12) return false;
    const Matrix via_s = pt * gower_transform(d, s).values() * pt.transpose();
    const Matrix direct = gower_transform(d, t).values();
    return (via_s - direct).cwiseAbs().maxCoeff() <=
           1e-8 * std::max(1.0, direct.cwiseAbs().maxCoeff());
  });

  suite("prop.eigenvalue_shift_law", 100, [&](int) {
    const Index m = gen.integer(3, 10);
    const DissimilarityMatrix d = gen.hollow_symmetric(m, 100.0);
    const double sigma = gen.real(0.0, 500.0);
    // Restrict both kernels to the complement of 1, where the shift acts
    // as +σ·I; the direction of 1 stays in the null space of both.
    Matrix basis = Matrix::Identity(m, m);
    basis.col(0).setOnes();
    Eigen::HouseholderQR<Matrix> qr(basis);
    const Matrix q = (qr.householderQ() * Matrix::Identity(m, m)).rightCols(m - 1);
    const KernelMatrix f = centered_transform(d);
    const KernelMatrix shifted = centered_transform(add_to_squared_offdiagonal(d, 2.0 * sigma));
    const Vector before = sym_eigen(KernelMatrix::from(q.transpose() * f.values() * q)).eigenvalues;
    const Vector after =
        sym_eigen(KernelMatrix::from(q.transpose() * shifted.values() * q)).eigenvalues;
    if ((shifted.values() * Vector::Ones(m)).cwiseAbs().maxCoeff() > 1e-7 * spectral_scale(after))
      return false;
    return ((after - before).array() - sigma).abs().maxCoeff() <= 1e-7 * spectral_scale(after);
  });

  suite("prop.shift_cost_law", 100, [&](int) {
    const Index m = gen.integer(3, 10);
    const int k = gen.integer(1, static_cast<int>(m));
    const DissimilarityMatrix d = gen.integer(0, 1) == 0
                                      ? gen.hollow_symmetric(m, 100.0)
                                      : row_distances(gen.points(m, 3, 100.0));
    const double sigma = gen.real(0.0, 100.0);
    return shift_cost_check(centered_transform(d), gen.full_partition(m, k), k, sigma).holds;
  });

  suite("prop.argmin_preserved", 50, [&](int) {
    const Index m = gen.integer(3, 8);
    const DissimilarityMatrix d = gen.hollow_symmetric(m, 100.0);
    const double sigma = gower_sigma(d);
    const KernelMatrix before = centered_transform(d);
    const KernelMatrix after = centered_transform(add_to_squared_offdiagonal(d, 2.0 * sigma));
    return optimal_partitions(before, 2) == optimal_partitions(after, 2);
  });

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.add("prop.runtime", secs < 60.0, "property suites took " + num(secs) + " s");
}

}  // namespace

std::vector<Check> run(const Options& options) {
  for (const auto& name : options.only) {
    if (name != kSection5 && name != kSection6 && name != kProperties) {
      throw Error(ErrorCode::InvalidArgument, "unknown section '" + name + "'");
    }
  }
  auto wanted = [&](const char* name) {
    return options.only.empty() || options.only.count(name) > 0;
  };

  std::vector<Check> checks;
  Recorder rec(checks);
  if (wanted(kSection5)) rec.guarded("s5", [&] { run_section5(rec, options); });
  if (wanted(kSection6)) rec.guarded("s6", [&] { run_section6(rec, options); });
  if (wanted(kProperties)) rec.guarded("prop", [&] { run_properties(rec, options); });
  return checks;
}

bool all_pass(const std::vector<Check>& checks) {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace gowerk::repro
