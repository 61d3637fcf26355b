#pragma once

#include <cmath>

#include "hardylab/angle.hpp"

namespace hardylab {

// Golden mean, (1 + sqrt 5) / 2.
inline double golden_mean() {
  static const double tau = 0.5 * (1.0 + std::sqrt(5.0));
  return tau;
}

// The relative angle at which the contradiction probability peaks:
// 2 * arccos(tau^{-1/2}), about 76.3454 degrees.
inline Angle golden_theta() {
  return Angle::radians(2.0 * std::acos(std::sqrt(1.0 / golden_mean())));
}

// Peak value of the contradiction probability, 1 / tau^5 = (5 sqrt 5 - 11)/2,
// about 0.0901699.
inline double golden_max_probability() {
  return 0.5 * (5.0 * std::sqrt(5.0) - 11.0);
}

}  // namespace hardylab
