#include "gowerk/transforms.hpp"

#include <cmath>
#include <sstream>

namespace gowerk {

SVector SVector::from(Vector components) {
  if (!components.allFinite()) {
    throw Error(ErrorCode::InvalidSVector, "s-vector has non-finite entries");
  }
  const double sum = components.sum();
  if (components.size() == 0 || std::abs(sum - 1.0) > kEpsSVectorSum) {
    std::ostringstream os;
    os.precision(17);
    os << "s-vector components must sum to 1 (got " << sum << ")";
    throw Error(ErrorCode::InvalidSVector, os.str());
  }
  return SVector(std::move(components));
}

SVector SVector::uniform(Index m) {
  if (m < 1) throw Error(ErrorCode::InvalidSVector, "s-vector must be non-empty");
  return SVector(Vector::Constant(m, 1.0 / static_cast<double>(m)));
}

KernelMatrix gower_transform(const DissimilarityMatrix& d, const SVector& s) {
  const Index m = d.size();
  if (s.size() != m) {
    std::ostringstream os;
    os << "s-vector has length " << s.size() << ", matrix has size " << m;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const Matrix a = -0.5 * d.squared();
  const Vector b = a * s.values();
  const double c = s.values().dot(b);

  Matrix f(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) f(i, j) = a(i, j) - b(i) - b(j) + c;
  }
  return KernelMatrix::from(std::move(f));
}

KernelMatrix centered_transform(const DissimilarityMatrix& d) {
  if (d.size() == 0) return KernelMatrix::from(Matrix(0, 0));
  return gower_transform(d, SVector::uniform(d.size()));
}

Matrix squared_distances_of(const KernelMatrix& f) {
  const Index m = f.size();
  const Vector diag = f.values().diagonal();
  Matrix sq(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) {
      sq(i, j) = i == j ? 0.0 : diag(i) + diag(j) - 2.0 * f(i, j);
    }
  }
  return sq;
}

DissimilarityMatrix recover_distances(const KernelMatrix& f, double eps) {
  const Index m = f.size();
  const double scale =
      std::max(1.0, m == 0 ? 0.0 : f.values().cwiseAbs().maxCoeff());
  Matrix sq = squared_distances_of(f);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) {
      if (sq(i, j) < -eps * scale) {
        std::ostringstream os;
        os << "squared distance " << sq(i, j) << " at (" << i << ", " << j
           << ") is negative; kernel is not Gram-like";
        throw Error(ErrorCode::NegativeSquaredDistance, os.str());
      }
    }
  }
  return make_dissimilarity_unchecked(sq.cwiseMax(0.0).cwiseSqrt());
}

Embedding embed(const KernelMatrix& f, double eps_psd) {
  const Index m = f.size();
  if (m == 0) return {Matrix(0, 0), Vector(0)};

  const EigenDecomposition eig = sym_eigen(f);
  const double scale = spectral_scale(eig.eigenvalues);
  const double lambda_min = eig.eigenvalues(m - 1);
  if (lambda_min < -eps_psd * scale) {
    std::ostringstream os;
    os.precision(10);
    os << "kernel is not positive semidefinite: eigenvalue " << lambda_min;
    throw NotPositiveSemidefiniteError(lambda_min, os.str());
  }

  Index rank = 0;
  while (rank < m && eig.eigenvalues(rank) > eps_psd * scale) ++rank;

  Embedding out;
  out.retained_eigenvalues = eig.eigenvalues.head(rank);
  out.points = eig.eigenvectors.leftCols(rank) *
               out.retained_eigenvalues.cwiseSqrt().asDiagonal();
  return out;
}

DissimilarityMatrix row_distances(const Matrix& points) {
  const Index m = points.rows();
  Matrix d = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      const double dist = (points.row(i) - points.row(j)).norm();
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return make_dissimilarity_unchecked(std::move(d));
}

EuclideanVerdict is_euclidean(const DissimilarityMatrix& d, double eps_psd) {
  if (d.size() == 0) return {};
  const EigenDecomposition eig = sym_eigen(centered_transform(d));
  EuclideanVerdict v;
  v.lambda_max = eig.eigenvalues(0);
  v.lambda_min = eig.eigenvalues(eig.eigenvalues.size() - 1);
  v.euclidean = v.lambda_min >= -eps_psd * spectral_scale(eig.eigenvalues);
  return v;
}

KernelMatrix schoenberg_exp_kernel(const DissimilarityMatrix& d, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidArgument, "gamma must be positive and finite");
  }
  Matrix k = (-gamma * d.squared()).array().exp().matrix();
  return KernelMatrix::from(std::move(k));
}

}  // namespace gowerk
