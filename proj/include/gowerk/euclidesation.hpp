#pragma once

#include <string_view>

#include "gowerk/symmat.hpp"

namespace gowerk {

enum class ShiftMode {
  // d' = sqrt(d² + 2σ): always yields a Euclidean matrix.
  corrected,
  // d' = sqrt(d² + σ): the classical statement. Kept only to demonstrate
  // that it can leave the matrix non-Euclidean.
  original_gower,
};

std::string_view to_string(ShiftMode mode) noexcept;
/// Accepts "corrected", "original-gower" and "original_gower".
ShiftMode parse_shift_mode(std::string_view text);

struct EuclidesationReport {
  double sigma = 0.0;  // max(0, −pre_lambda_min), zeroed within tolerance
  ShiftMode mode = ShiftMode::corrected;
  double pre_lambda_min = 0.0;
  double post_lambda_min = 0.0;
  // max(1, max|λ|) of the repaired centered kernel.
  double post_spectral_scale = 1.0;
  DissimilarityMatrix repaired;
};

/// σ = max(0, −λ_min) of the centered kernel, taken as exactly 0 when
/// λ_min ≥ −eps_psd·max(1, max|λ|) so Euclidean input is left alone.
double gower_sigma(const DissimilarityMatrix& d, double eps_psd = kEpsPsd);

/// d'_ij = sqrt(d_ij² + delta) for i ≠ j; the diagonal stays zero.
/// Throws InvalidArgument if delta < 0.
DissimilarityMatrix add_to_squared_offdiagonal(const DissimilarityMatrix& d,
                                               double delta);

/// Shifts the off-diagonal squared dissimilarities by 2σ (corrected) or σ
/// (original_gower), with σ = gower_sigma(d), and reports the smallest
/// centered-kernel eigenvalue before and after.
EuclidesationReport euclidise(const DissimilarityMatrix& d,
                              ShiftMode mode = ShiftMode::corrected,
                              double eps_psd = kEpsPsd);

/// max over ordered triples of distinct indices (x, y, z) of
/// |d(x,y) + d(y,z) − d(z,x)|; 0 when m < 3. Adding it off-diagonal makes
/// D metric.
double metric_constant(const DissimilarityMatrix& d);

/// d'_ij = d_ij + c for i ≠ j. Throws ConstantTooSmall if c is below
/// max_triangle_violation(d), i.e. if the result would not be metric.
/// metric_constant(d) is always large enough.
DissimilarityMatrix metricize(const DissimilarityMatrix& d, double c);

/// Largest violation max(0, d(x,z) − d(x,y) − d(y,z)) over all triples.
double max_triangle_violation(const DissimilarityMatrix& d);

}  // namespace gowerk
