#pragma once

#include <cmath>
#include <numbers>

namespace hardylab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A direction in the x-z plane, measured from the z axis.
//
// Stored in radians. Arithmetic never wraps on its own; normalization into
// [0, 2*pi) is an explicit operation.
class Angle {
 public:
  constexpr Angle() = default;

  static constexpr Angle radians(double value) { return Angle(value); }
  static constexpr Angle degrees(double value) {
    return Angle(value * (kPi / 180.0));
  }

  constexpr double rad() const { return value_; }
  constexpr double deg() const { return value_ * (180.0 / kPi); }

  // Wraps into [0, 2*pi).
  Angle normalized() const {
    double r = std::fmod(value_, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return Angle(r);
  }

  friend constexpr Angle operator+(Angle a, Angle b) {
    return Angle(a.value_ + b.value_);
  }
  friend constexpr Angle operator-(Angle a, Angle b) {
    return Angle(a.value_ - b.value_);
  }
  friend constexpr Angle operator-(Angle a) { return Angle(-a.value_); }

 private:
  explicit constexpr Angle(double radians) : value_(radians) {}

  double value_ = 0.0;
};

// Distance from `a` to the nearest integer multiple of pi, in radians.
// Zero exactly on the lines where a pair of spin observables commute.
inline double half_turn_distance(Angle a) {
  double r = std::fmod(std::fabs(a.rad()), kPi);
  return std::min(r, kPi - r);
}

}  // namespace hardylab
