#pragma once

namespace gowerk {

// Relative symmetry / hollowness tolerance for validated inputs.
inline constexpr double kEpsSym = 1e-9;
// Relative tolerance for "eigenvalue is numerically zero".
inline constexpr double kEpsPsd = 1e-8;
// Relative clamp for tiny negative squared distances.
inline constexpr double kEpsSquaredDistance = 1e-8;
// Allowed deviation of sum(s) from 1.
inline constexpr double kEpsSVectorSum = 1e-9;

}  // namespace gowerk
