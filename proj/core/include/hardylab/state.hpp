#pragma once

#include "hardylab/angle.hpp"

namespace hardylab {

// The four measurement directions of a two-observer experiment: each side
// chooses between an unprimed and a primed spin direction.
struct MeasurementSetup {
  Angle theta_a;
  Angle theta_a_prime;
  Angle theta_b;
  Angle theta_b_prime;

  // Relative angles between the primed and unprimed directions.
  Angle theta_1() const { return theta_a_prime - theta_a; }
  Angle theta_2() const { return theta_b_prime - theta_b; }

  // Setup with both unprimed directions along the z axis.
  static MeasurementSetup from_relative(Angle theta_1, Angle theta_2) {
    return {Angle::radians(0.0), theta_1, Angle::radians(0.0), theta_2};
  }
};

// Outcome relabeling of the four contradiction conditions. FlipA negates the
// outcomes on particle a, FlipB on particle b, FlipBoth on both.
enum class HardyVariant { Original, FlipBoth, FlipA, FlipB };

constexpr int variant_sign_a(HardyVariant v) {
  return (v == HardyVariant::FlipA || v == HardyVariant::FlipBoth) ? -1 : +1;
}

constexpr int variant_sign_b(HardyVariant v) {
  return (v == HardyVariant::FlipB || v == HardyVariant::FlipBoth) ? -1 : +1;
}

constexpr const char* variant_name(HardyVariant v) {
  switch (v) {
    case HardyVariant::Original: return "original";
    case HardyVariant::FlipBoth: return "flip-both";
    case HardyVariant::FlipA: return "flip-a";
    case HardyVariant::FlipB: return "flip-b";
  }
  return "original";
}

// Real-amplitude two-qubit state over the product eigenbasis of S(theta_a)
// and S(theta_b):
//
//   c_pp |+>|+> + c_pm |+>|-> + c_mp |->|+> + c_mm |->|->
//
// where |+>, |-> are the +1 and -1 eigenvectors of the labeled direction on
// each side.
struct TwoQubitState {
  double c_pp = 0.0;
  double c_pm = 0.0;
  double c_mp = 0.0;
  double c_mm = 0.0;
  Angle theta_a;  // basis label, particle a
  Angle theta_b;  // basis label, particle b

  double norm_squared() const {
    return c_pp * c_pp + c_pm * c_pm + c_mp * c_mp + c_mm * c_mm;
  }

  bool is_normalized(double tol = 1e-12) const {
    return std::fabs(norm_squared() - 1.0) <= tol;
  }
};

}  // namespace hardylab
