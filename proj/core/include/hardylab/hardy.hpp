#pragma once

#include "hardylab/angle.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/state.hpp"

namespace hardylab {

// Default threshold below which a condition probability counts as zero.
inline constexpr double kDefaultZeroTol = 1e-10;

// Tolerance on the distance of a relative angle to a multiple of pi below
// which a setup is treated as degenerate.
inline constexpr double kDegeneracyTol = 1e-9;

// The four condition probabilities of a contradiction test.
//
// For the original variant:
//   p1a = P(a=+1, b=+1)  at (theta_a, theta_b)        must vanish
//   p1b = P(a=-1, b=-1)  at (theta_a, theta_b')       must vanish
//   p1c = P(a=-1, b=-1)  at (theta_a', theta_b)       must vanish
//   p1d = P(a=-1, b=-1)  at (theta_a', theta_b')      must be positive
// Other variants negate the outcome signs per side.
struct HardyReport {
  double p1a = 0.0;
  double p1b = 0.0;
  double p1c = 0.0;
  double p1d = 0.0;
  double zero_tol = kDefaultZeroTol;
  HardyVariant variant = HardyVariant::Original;
  bool holds = false;

  bool zero_a_holds() const { return p1a <= zero_tol; }
  bool zero_b_holds() const { return p1b <= zero_tol; }
  bool zero_c_holds() const { return p1c <= zero_tol; }
  bool nonzero_d_holds() const { return p1d > zero_tol; }
};

// The unique normalized state satisfying the three zero conditions of the
// original variant for the given setup, expressed in the (theta_a, theta_b)
// product basis. `sign` picks the overall sign of the coefficient triple.
//
// Throws DegenerateSetup when a relative angle lies on a multiple of pi
// within kDegeneracyTol.
TwoQubitState construct_state(const MeasurementSetup& setup, int sign = +1);

// Rotates the basis on the flipped side(s) by half a turn, turning a state
// that satisfies the original conditions into one satisfying the requested
// variant's conditions for the same setup.
TwoQubitState apply_variant(const TwoQubitState& state, HardyVariant variant);

// Evaluates the four condition probabilities of `variant` for `state` under
// `setup` and decides whether the contradiction holds.
HardyReport check_conditions(const TwoQubitState& state,
                             const MeasurementSetup& setup,
                             HardyVariant variant = HardyVariant::Original,
                             double zero_tol = kDefaultZeroTol);

// Probability of the all-minus outcome at the primed directions for the
// constructed state, as a function of the relative angles only. Evaluated in
// a cleared form that is finite everywhere; returns 0 when the denominator
// vanishes (both angles multiples of 2*pi).
double probability_closed_form(Angle theta_1, Angle theta_2);

// Closed form restricted to the diagonal theta_1 = theta_2 = theta.
double probability_diagonal(Angle theta);

// Coefficients of the constructed state on the diagonal, common sign chosen
// to match construct_state.
struct DiagonalCoefficients {
  double c_mp = 0.0;
  double c_pm = 0.0;
  double c_mm = 0.0;
};
DiagonalCoefficients diagonal_coefficients(Angle theta);

// Solution of the homogeneous linear system formed by the three zero
// conditions on the four coefficients. `dimension` is the nullspace
// dimension (1 away from degeneracies); `state` is one normalized nullspace
// basis vector. Degenerate setups are reported, never thrown.
struct UniqueSolution {
  int dimension = 0;
  TwoQubitState state;
};
UniqueSolution solve_unique(const MeasurementSetup& setup);

}  // namespace hardylab
