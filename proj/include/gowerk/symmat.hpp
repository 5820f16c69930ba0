#pragma once

#include <Eigen/Core>

#include "gowerk/error.hpp"
#include "gowerk/tolerances.hpp"

namespace gowerk {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense m×m matrix with finite entries. Immutable once built.
class SquareMatrix {
 public:
  SquareMatrix() = default;

  /// Throws NotSquare or NonFiniteEntry.
  static SquareMatrix from(Matrix values);
  static SquareMatrix zero(Index m) { return SquareMatrix(Matrix::Zero(m, m)); }
  static SquareMatrix identity(Index m) {
    return SquareMatrix(Matrix::Identity(m, m));
  }

  Index size() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }
  double operator()(Index i, Index j) const { return values_(i, j); }

 private:
  explicit SquareMatrix(Matrix values) : values_(std::move(values)) {}

  Matrix values_;
};

/// Hollow, symmetric, non-negative matrix of pairwise dissimilarities.
/// Not necessarily metric and not necessarily Euclidean.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;

  Index size() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }
  double operator()(Index i, Index j) const { return values_(i, j); }

  /// Element-wise squares, D_sq.
  Matrix squared() const { return values_.cwiseProduct(values_); }

 private:
  friend DissimilarityMatrix validate_dissimilarity(const SquareMatrix&, double);
  friend DissimilarityMatrix make_dissimilarity_unchecked(Matrix);

  explicit DissimilarityMatrix(Matrix values) : values_(std::move(values)) {}

  Matrix values_;
};

/// Symmetric matrix of inner products. Positive semidefinite exactly when
/// the distances it encodes are Euclidean.
class KernelMatrix {
 public:
  KernelMatrix() = default;

  /// Symmetrizes to (F + Fᵀ)/2; throws AsymmetricInput when the two
  /// triangles disagree by more than eps_sym·max(1, max|F|).
  explicit KernelMatrix(const SquareMatrix& raw, double eps_sym = kEpsSym);
  static KernelMatrix from(Matrix values, double eps_sym = kEpsSym) {
    return KernelMatrix(SquareMatrix::from(std::move(values)), eps_sym);
  }

  Index size() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }
  double operator()(Index i, Index j) const { return values_(i, j); }

 private:
  Matrix values_;
};

/// Validates and canonicalizes a raw matrix into a dissimilarity matrix:
/// symmetrized, diagonal zeroed, tiny negatives clamped to zero.
DissimilarityMatrix validate_dissimilarity(const SquareMatrix& raw,
                                           double eps_sym = kEpsSym);

/// Internal shortcut for values that are hollow/symmetric/non-negative by
/// construction (e.g. square roots of recovered squared distances).
DissimilarityMatrix make_dissimilarity_unchecked(Matrix values);

struct EigenDecomposition {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // column j pairs with eigenvalues(j)
};

struct JacobiOptions {
  int max_sweeps = 100;
};

/// Full spectral decomposition by cyclic Jacobi rotations.
///
/// Eigenvalues come back sorted descending. Each eigenvector is signed so
/// that its largest-magnitude component is positive (first such component
/// on ties), which makes the result deterministic for a fixed input.
/// Throws ConvergenceFailure if the sweep cap is hit.
EigenDecomposition sym_eigen(const KernelMatrix& a, JacobiOptions options = {});

double min_eigenvalue(const KernelMatrix& a);

/// max(1, max_j |λ_j|): the scale that relative eigenvalue tolerances use.
double spectral_scale(const Vector& eigenvalues);

}  // namespace gowerk
