#include "gowerk/euclidesation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gowerk/transforms.hpp"

namespace gowerk {

std::string_view to_string(ShiftMode mode) noexcept {
  switch (mode) {
    case ShiftMode::corrected: return "corrected";
    case ShiftMode::original_gower: return "original-gower";
  }
  return "corrected";
}

ShiftMode parse_shift_mode(std::string_view text) {
  if (text == "corrected") return ShiftMode::corrected;
  if (text == "original-gower" || text == "original_gower") {
    return ShiftMode::original_gower;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown shift mode '" + std::string(text) + "'");
}

namespace {

// Round-off negatives on an embeddable matrix count as zero.
double sigma_from(const Vector& eigenvalues, double eps_psd) {
  const double lmin = eigenvalues(eigenvalues.size() - 1);
  return lmin >= -eps_psd * spectral_scale(eigenvalues) ? 0.0 : -lmin;
}

}  // namespace

double gower_sigma(const DissimilarityMatrix& d, double eps_psd) {
  if (d.size() == 0) return 0.0;
  return sigma_from(sym_eigen(centered_transform(d)).eigenvalues, eps_psd);
}

DissimilarityMatrix add_to_squared_offdiagonal(const DissimilarityMatrix& d,
                                               double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::InvalidArgument,
                "shift of squared dissimilarities must be non-negative");
  }
  Matrix sq = d.squared();
  sq.array() += delta;
  sq.diagonal().setZero();
  return make_dissimilarity_unchecked(sq.cwiseSqrt());
}

EuclidesationReport euclidise(const DissimilarityMatrix& d, ShiftMode mode,
                              double eps_psd) {
  EuclidesationReport report;
  report.mode = mode;
  if (d.size() == 0) {
    report.repaired = d;
    return report;
  }

  const Vector pre = sym_eigen(centered_transform(d)).eigenvalues;
  report.pre_lambda_min = pre(pre.size() - 1);
  report.sigma = sigma_from(pre, eps_psd);

  if (report.sigma == 0.0) {
    report.repaired = d;
  } else {
    const double factor = mode == ShiftMode::corrected ? 2.0 : 1.0;
    report.repaired = add_to_squared_offdiagonal(d, factor * report.sigma);
  }

  const EigenDecomposition post = sym_eigen(centered_transform(report.repaired));
  report.post_lambda_min = post.eigenvalues(post.eigenvalues.size() - 1);
  report.post_spectral_scale = spectral_scale(post.eigenvalues);
  return report;
}

double metric_constant(const DissimilarityMatrix& d) {
  const Index m = d.size();
  double best = 0.0;
  for (Index x = 0; x < m; ++x) {
    for (Index y = 0; y < m; ++y) {
      if (y == x) continue;
      for (Index z = 0; z < m; ++z) {
        if (z == x || z == y) continue;
        best = std::max(best, std::abs(d(x, y) + d(y, z) - d(z, x)));
      }
    }
  }
  return best;
}

DissimilarityMatrix metricize(const DissimilarityMatrix& d, double c) {
  // Any c at or above the worst violation already yields a metric; the
  // absolute-value constant is a sufficient, not a necessary, choice.
  const double needed = max_triangle_violation(d);
  if (!(c >= needed) || !std::isfinite(c)) {
    std::ostringstream os;
    os.precision(17);
    os << "metricization constant " << c << " is below the required " << needed;
    throw Error(ErrorCode::ConstantTooSmall, os.str());
  }
  Matrix out = d.values();
  out.array() += c;
  out.diagonal().setZero();
  return make_dissimilarity_unchecked(std::move(out));
}

double max_triangle_violation(const DissimilarityMatrix& d) {
  const Index m = d.size();
  double worst = 0.0;
  for (Index x = 0; x < m; ++x) {
    for (Index y = 0; y < m; ++y) {
      for (Index z = 0; z < m; ++z) {
        worst = std::max(worst, d(x, z) - d(x, y) - d(y, z));
      }
    }
  }
  return worst;
}

}  // namespace gowerk
