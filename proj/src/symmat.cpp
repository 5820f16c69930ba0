#include "gowerk/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace gowerk {

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string at(Index i, Index j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSVector: return "InvalidSVector";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeSquaredDistance: return "NegativeSquaredDistance";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::ConstantTooSmall: return "ConstantTooSmall";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::ZeroWeightCluster: return "ZeroWeightCluster";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

SquareMatrix SquareMatrix::from(Matrix values) {
  if (values.rows() != values.cols()) {
    std::ostringstream os;
    os << "matrix is " << values.rows() << "x" << values.cols()
       << ", expected square";
    throw Error(ErrorCode::NotSquare, os.str());
  }
  for (Index j = 0; j < values.cols(); ++j) {
    for (Index i = 0; i < values.rows(); ++i) {
      if (!std::isfinite(values(i, j))) {
        throw Error(ErrorCode::NonFiniteEntry,
                    "non-finite entry at " + at(i, j));
      }
    }
  }
  return SquareMatrix(std::move(values));
}

KernelMatrix::KernelMatrix(const SquareMatrix& raw, double eps_sym) {
  const Matrix& f = raw.values();
  const double tol = eps_sym * std::max(1.0, max_abs(f));
  for (Index i = 0; i < f.rows(); ++i) {
    for (Index j = i + 1; j < f.cols(); ++j) {
      if (std::abs(f(i, j) - f(j, i)) > tol) {
        throw Error(ErrorCode::AsymmetricInput,
                    "kernel not symmetric at " + at(i, j));
      }
    }
  }
  values_ = 0.5 * (f + f.transpose());
}

DissimilarityMatrix validate_dissimilarity(const SquareMatrix& raw,
                                           double eps_sym) {
  const Matrix& d = raw.values();
  const Index m = d.rows();
  const double tol = eps_sym * std::max(1.0, max_abs(d));

  for (Index i = 0; i < m; ++i) {
    if (std::abs(d(i, i)) > tol) {
      throw Error(ErrorCode::NonzeroDiagonal,
                  "diagonal entry " + at(i, i) + " is not zero");
    }
  }
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      if (std::abs(d(i, j) - d(j, i)) > tol) {
        throw Error(ErrorCode::AsymmetricInput,
                    "dissimilarity not symmetric at " + at(i, j));
      }
    }
  }
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) {
      if (d(i, j) < -tol) {
        throw Error(ErrorCode::NegativeEntry, "negative entry at " + at(i, j));
      }
    }
  }

  Matrix canon = 0.5 * (d + d.transpose());
  canon = canon.cwiseMax(0.0);
  canon.diagonal().setZero();
  return DissimilarityMatrix(std::move(canon));
}

DissimilarityMatrix make_dissimilarity_unchecked(Matrix values) {
  return DissimilarityMatrix(std::move(values));
}

EigenDecomposition sym_eigen(const KernelMatrix& input, JacobiOptions options) {
  const Index n = input.size();
  Matrix a = input.values();
  Matrix v = Matrix::Identity(n, n);

  bool converged = n <= 1;
  for (int sweep = 1; sweep <= options.max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (Index q = 1; q < n; ++q) {
      for (Index p = 0; p < q; ++p) off += std::abs(a(p, q));
    }
    if (off == 0.0) {
      converged = true;
      break;
    }
    // Early sweeps only rotate the large off-diagonal entries.
    const double threshold =
        sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;

    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double g = 100.0 * std::abs(apq);
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Once an entry is below the rounding level of both diagonal
        // entries it can be dropped without changing the spectrum.
        if (sweep > 4 && std::abs(app) + g == std::abs(app) &&
            std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        if (std::abs(apq) <= threshold || apq == 0.0) continue;

        const double h = aqq - app;
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double new_rp = c * arp - s * arq;
          const double new_rq = s * arp + c * arq;
          a(r, p) = new_rp;
          a(p, r) = new_rp;
          a(r, q) = new_rq;
          a(q, r) = new_rq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (Index r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::ConvergenceFailure,
                "Jacobi eigensolver did not converge within " +
                    std::to_string(options.max_sweeps) + " sweeps");
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    return a(x, x) > a(y, y);
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    const Index src = order[static_cast<std::size_t>(j)];
    out.eigenvalues(j) = a(src, src);
    Vector col = v.col(src);
    // Sign convention: the largest-magnitude component is positive.
    const double peak = col.cwiseAbs().maxCoeff();
    Index lead = 0;
    while (std::abs(col(lead)) < peak * (1.0 - 1e-12)) ++lead;
    if (col(lead) < 0.0) col = -col;
    out.eigenvectors.col(j) = col;
  }
  return out;
}

double min_eigenvalue(const KernelMatrix& a) {
  if (a.size() == 0) return 0.0;
  const EigenDecomposition eig = sym_eigen(a);
  return eig.eigenvalues(eig.eigenvalues.size() - 1);
}

double spectral_scale(const Vector& eigenvalues) {
  if (eigenvalues.size() == 0) return 1.0;
  return std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
}

}  // namespace gowerk
