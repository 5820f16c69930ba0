#pragma once

#include "gowerk/symmat.hpp"

namespace gowerk {

/// Projection vector whose components sum to one.
class SVector {
 public:
  SVector() = default;

  /// Throws InvalidSVector if |Σ s_i − 1| > 1e-9 or an entry is not finite.
  static SVector from(Vector components);
  static SVector uniform(Index m);

  Index size() const noexcept { return components_.size(); }
  const Vector& values() const noexcept { return components_; }

 private:
  explicit SVector(Vector c) : components_(std::move(c)) {}

  Vector components_;
};

/// Explicit coordinates Y with Y·Yᵀ equal to the source kernel. Columns are
/// ordered by descending eigenvalue; near-zero eigen-directions are dropped.
struct Embedding {
  Matrix points;               // m×r
  Vector retained_eigenvalues; // r, all > drop threshold

  Index rank() const noexcept { return points.cols(); }
};

struct EuclideanVerdict {
  bool euclidean = true;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// F = (I − 1sᵀ)(−½ D_sq)(I − s1ᵀ).
///
/// Expanded as F_ij = a_ij − b_i − b_j + c with A = −½ D_sq, b = A·s and
/// c = sᵀA s, which is the same product without forming the projectors.
/// F is positive semidefinite for every valid s iff D is Euclidean.
KernelMatrix gower_transform(const DissimilarityMatrix& d, const SVector& s);

/// Double centering: gower_transform with s = 1/m. Rows and columns of the
/// result sum to zero.
KernelMatrix centered_transform(const DissimilarityMatrix& d);

/// d_ij = sqrt(f_ii + f_jj − 2 f_ij). Squared values down to
/// −eps·max(1, max|F|) are clamped to zero; anything lower throws
/// NegativeSquaredDistance.
DissimilarityMatrix recover_distances(const KernelMatrix& f,
                                      double eps = kEpsSquaredDistance);

/// Squared distances f_ii + f_jj − 2 f_ij without the sign check or sqrt.
Matrix squared_distances_of(const KernelMatrix& f);

/// Y = V·diag(√λ) over eigenvalues above eps_psd·max(1, max|λ|).
/// Throws NotPositiveSemidefiniteError when λ_min is below −eps_psd·scale.
Embedding embed(const KernelMatrix& f, double eps_psd = kEpsPsd);

/// Pairwise Euclidean distances between the rows of a coordinate matrix.
DissimilarityMatrix row_distances(const Matrix& points);

/// Tested on the centered kernel: any valid s gives the same verdict.
EuclideanVerdict is_euclidean(const DissimilarityMatrix& d,
                              double eps_psd = kEpsPsd);

/// k_ij = exp(−γ d_ij²). Throws InvalidArgument unless γ > 0.
KernelMatrix schoenberg_exp_kernel(const DissimilarityMatrix& d, double gamma);

}  // namespace gowerk
