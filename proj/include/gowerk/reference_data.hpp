#pragma once

#include <array>

#include "gowerk/symmat.hpp"

/// Worked-example inputs and their published (one-decimal) outputs, compiled
/// in so the reproduction harness needs no external files.
namespace gowerk::reference {

// --- Euclidean example: 7 points in 4 dimensions -------------------------

/// Integer coordinates X (7×4).
Matrix points();
/// Distances between the rows of points(), as published (one decimal).
Matrix published_distances();

/// Projection vectors as published: two decimals, so they do not sum to
/// exactly one (1.01 and 0.99).
Vector published_s();
Vector published_s_prime();
/// Vectors summing to one that round to the published ones and reproduce
/// the published kernels to within 0.05.
Vector s();
Vector s_prime();

Matrix published_kernel();        // F  for s
Matrix published_kernel_prime();  // F′ for s′
Matrix published_embedding();     // Y  from F
Matrix published_embedding_prime();

inline constexpr double kPublishedRoundTripError = 5.727256e-25;
inline constexpr double kPublishedRoundTripErrorPrime = 2.090166e-25;
/// Two-cluster result, 1-based: {1,2,3} vs {4,5,6,7}.
inline constexpr std::array<int, 7> kEuclideanClustering{1, 1, 1, 2, 2, 2, 2};

// --- Non-Euclidean example: 6 objects ------------------------------------

Matrix non_euclidean_distances();
Matrix published_non_euclidean_kernel();  // centered kernel
Matrix published_sigma_shift_kernel();    // after d² + σ
Matrix published_two_sigma_shift_kernel();// after d² + 2σ
Vector center_weights();                  // (10,1,1,10,1,1)

inline constexpr double kSigma = 757.205;
inline constexpr double kSigmaShiftLambdaMin = -378.603;

inline constexpr std::array<int, 6> kBestPartition{1, 1, 2, 1, 1, 2};
inline constexpr std::array<int, 6> kHalvesPartition{1, 1, 1, 2, 2, 2};

inline constexpr double kCostBestNonEuclidean = 1325.0;
inline constexpr double kCostHalvesNonEuclidean = 1400.0;
inline constexpr double kWeightedCostNonEuclidean = 1175.0;
inline constexpr double kCostBestEuclidised = 4353.821;
inline constexpr double kCostHalvesEuclidised = 4428.821;
inline constexpr double kWeightedCostEuclidised = 5907.533;

}  // namespace gowerk::reference
