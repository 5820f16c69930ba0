#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gowerk/euclidesation.hpp"
#include "gowerk/reference_data.hpp"
#include "gowerk/transforms.hpp"
#include "support/build.hpp"
#include "support/oracles.hpp"

using namespace gowerk;
using testing::code_of;
using testing::dis;
using testing::mat;

namespace {

const Matrix kLine = mat({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});

DissimilarityMatrix ne() { return dis(reference::non_euclidean_distances()); }

}  // namespace

TEST_CASE("shift mode names") {
  CHECK(parse_shift_mode("corrected") == ShiftMode::corrected);
  CHECK(parse_shift_mode("original-gower") == ShiftMode::original_gower);
  CHECK(parse_shift_mode("original_gower") == ShiftMode::original_gower);
  CHECK(to_string(ShiftMode::original_gower) == "original-gower");
  CHECK(code_of([] { parse_shift_mode("2sigma"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("gower_sigma") {
  CHECK(std::abs(gower_sigma(ne()) - 757.205) <= 1e-3);
  CHECK(std::abs(gower_sigma(ne()) + oracle::lambda_min(oracle::centered(ne().values()))) <= 1e-9);
  CHECK(gower_sigma(dis(mat({{0}}))) == 0.0);
  CHECK(gower_sigma(row_distances(reference::points())) == 0.0);
}

TEST_CASE("euclidise on the non-Euclidean example") {
  const auto corrected = euclidise(ne(), ShiftMode::corrected);
  CHECK(std::abs(corrected.sigma - 757.205) <= 1e-3);
  CHECK(corrected.pre_lambda_min == doctest::Approx(-corrected.sigma));
  CHECK(std::abs(corrected.post_lambda_min) <= 1e-6);
  CHECK(is_euclidean(corrected.repaired).euclidean);
  const KernelMatrix fe = centered_transform(corrected.repaired);
  CHECK(std::abs(fe(0, 0) - 897.7) <= 0.05);
  CHECK(oracle::max_abs(fe.values() - reference::published_two_sigma_shift_kernel()) <= 0.05);

  const auto original = euclidise(ne(), ShiftMode::original_gower);
  CHECK(std::abs(original.post_lambda_min + 378.603) <= 1e-3);
  CHECK_FALSE(is_euclidean(original.repaired).euclidean);
  CHECK(oracle::max_abs(centered_transform(original.repaired).values() -
                        reference::published_sigma_shift_kernel()) <= 0.05);

  // Independent check of the shifted spectra.
  Matrix sq = reference::non_euclidean_distances().cwiseProduct(reference::non_euclidean_distances());
  const double sigma = corrected.sigma;
  Matrix two = sq, one = sq;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) {
        two(i, j) += 2 * sigma;
        one(i, j) += sigma;
      }
  CHECK(std::abs(oracle::lambda_min(oracle::centered(two.cwiseSqrt())) - corrected.post_lambda_min) <= 1e-8);
  CHECK(std::abs(oracle::lambda_min(oracle::centered(one.cwiseSqrt())) - original.post_lambda_min) <= 1e-8);
}

TEST_CASE("euclidise leaves Euclidean input unchanged") {
  const DissimilarityMatrix d = row_distances(reference::points());
  const auto r = euclidise(d);
  CHECK(r.sigma == 0.0);
  CHECK(r.repaired.values() == d.values());
}

TEST_CASE("add_to_squared_offdiagonal") {
  const auto d = add_to_squared_offdiagonal(dis(mat({{0, 3}, {3, 0}})), 16.0);
  CHECK(d(0, 1) == doctest::Approx(5.0));
  CHECK(d(0, 0) == 0.0);
  CHECK(code_of([] { add_to_squared_offdiagonal(dis(mat({{0, 3}, {3, 0}})), -1.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("metric_constant") {
  CHECK(metric_constant(dis(mat({{0, 4}, {4, 0}}))) == 0.0);
  CHECK(metric_constant(dis(mat({{0}}))) == 0.0);
  // Best distinct triple is (0,2,1): 3 + 1 − 1.
  CHECK(metric_constant(dis(kLine)) == 3.0);
  CHECK(metric_constant(dis(kLine)) == oracle::metric_constant(kLine));
  CHECK(metric_constant(ne()) == 70.0);
  CHECK(metric_constant(ne()) == oracle::metric_constant(reference::non_euclidean_distances()));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix d = oracle::random_hollow(rng, 2 + trial % 8);
    CHECK(metric_constant(dis(d)) == oracle::metric_constant(d));
  }
}

TEST_CASE("metricize") {
  const DissimilarityMatrix metric = row_distances(reference::points());
  const auto same = metricize(metric, 0.0);
  CHECK(same.values() == metric.values());
  CHECK(oracle::satisfies_triangle(same.values(), 1e-9));

  const auto line = metricize(dis(kLine), metric_constant(dis(kLine)));
  CHECK(line(0, 1) == 4.0);
  CHECK(line(1, 1) == 0.0);
  CHECK(oracle::satisfies_triangle(line.values()));

  const auto fixed = metricize(ne(), metric_constant(ne()));
  CHECK(oracle::satisfies_triangle(fixed.values()));
  CHECK(max_triangle_violation(fixed) == 0.0);
  CHECK(max_triangle_violation(ne()) == 10.0);

  // The line matrix breaks the triangle inequality by 1 at (0,1,2).
  CHECK(oracle::satisfies_triangle(metricize(dis(kLine), 1.0).values()));
  CHECK(code_of([] { metricize(dis(kLine), 0.5); }) == ErrorCode::ConstantTooSmall);
  CHECK(code_of([] { metricize(dis(kLine), -1.0); }) == ErrorCode::ConstantTooSmall);
}

TEST_CASE("max_triangle_violation") {
  CHECK(max_triangle_violation(dis(kLine)) == 1.0);
  CHECK(max_triangle_violation(row_distances(reference::points())) <= 1e-9);
}

TEST_CASE("corrected euclidesation is idempotent and monotone") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 3 + trial % 8;
    const DissimilarityMatrix d = dis(oracle::random_hollow(rng, m));
    const auto once = euclidise(d);
    CHECK(once.post_lambda_min >= -kEpsPsd * once.post_spectral_scale);
    CHECK(once.sigma == doctest::Approx(std::max(0.0, -once.pre_lambda_min)));

    const auto twice = euclidise(once.repaired);
    CHECK(twice.sigma <= 1e-8 * twice.post_spectral_scale);
    CHECK(oracle::max_abs(twice.repaired.values() - once.repaired.values()) <=
          1e-6 * std::max(1.0, oracle::max_abs(once.repaired.values())));

    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        CHECK(once.repaired(i, j) >= d(i, j));
        const double added = once.repaired(i, j) * once.repaired(i, j) - d(i, j) * d(i, j);
        CHECK(std::abs(added - 2 * once.sigma) <= 1e-12 * std::max(1.0, d(i, j) * d(i, j)));
        if (once.sigma == 0) CHECK(once.repaired(i, j) == d(i, j));
      }
  }
}

TEST_CASE("eigenvalue shift law") {
  // The centered kernel's eigenvalues off the constant direction move up by
  // sigma; the constant direction keeps eigenvalue 0.
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> us(0.0, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 9;
    const DissimilarityMatrix d = dis(oracle::random_hollow(rng, m));
    const double sigma = us(rng);
    const Matrix f = oracle::centered(d.values());
    const Matrix g = oracle::centered(add_to_squared_offdiagonal(d, 2 * sigma).values());

    // Restrict both to the orthogonal complement of the ones vector.
    Matrix basis(m, m);
    basis.col(0) = Vector::Ones(m);
    basis.rightCols(m - 1) = Matrix::Identity(m, m).rightCols(m - 1);
    const Eigen::HouseholderQR<Matrix> qr(basis);
    const Matrix q = Matrix(qr.householderQ()).rightCols(m - 1);
    const Vector before = oracle::eigenvalues(q.transpose() * f * q);
    const Vector after = oracle::eigenvalues(q.transpose() * g * q);
    const double scale = std::max(1.0, oracle::max_abs(g));
    CHECK(oracle::max_abs((after - before).array() - sigma) <= 1e-7 * scale);
    CHECK(std::abs(Vector::Ones(m).dot(g * Vector::Ones(m))) <= 1e-8 * scale * m);
  }
}
