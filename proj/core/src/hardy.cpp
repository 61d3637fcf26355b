#include "hardylab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hardylab/spinalg.hpp"

namespace hardylab {

namespace {

struct HalfAngles {
  double s1, c1, s2, c2;
};

HalfAngles half_angles(Angle theta_1, Angle theta_2) {
  const double h1 = 0.5 * theta_1.rad();
  const double h2 = 0.5 * theta_2.rad();
  return {std::sin(h1), std::cos(h1), std::sin(h2), std::cos(h2)};
}

void require_non_degenerate(const MeasurementSetup& setup) {
  if (half_turn_distance(setup.theta_1()) < kDegeneracyTol) {
    throw DegenerateSetup(DegenerateSetup::Side::A, setup.theta_1().deg());
  }
  if (half_turn_distance(setup.theta_2()) < kDegeneracyTol) {
    throw DegenerateSetup(DegenerateSetup::Side::B, setup.theta_2().deg());
  }
}

}  // namespace

TwoQubitState construct_state(const MeasurementSetup& setup, int sign) {
  require_non_degenerate(setup);

  // Cleared form of the tan-based solution: multiplying every coefficient by
  // cos(theta_1/2) cos(theta_2/2) removes the poles at half-turn angles while
  // keeping the two zero-condition constraints satisfied identically.
  const auto [s1, c1, s2, c2] = half_angles(setup.theta_1(), setup.theta_2());
  const double t_mp = s1 * c2;
  const double t_pm = c1 * s2;
  const double t_mm = s1 * s2;
  const double norm =
      std::sqrt(t_mp * t_mp + t_pm * t_pm + t_mm * t_mm);
  const double f = static_cast<double>(sign) / norm;

  TwoQubitState state;
  state.c_pp = 0.0;
  state.c_pm = f * t_pm;
  state.c_mp = f * t_mp;
  state.c_mm = f * t_mm;
  state.theta_a = setup.theta_a;
  state.theta_b = setup.theta_b;
  return state;
}

TwoQubitState apply_variant(const TwoQubitState& state, HardyVariant variant) {
  TwoQubitState r = state;
  if (variant_sign_a(variant) < 0) {
    // half-turn rotation on side a: |+> -> |->, |-> -> -|+>
    r = {-r.c_mp, -r.c_mm, r.c_pp, r.c_pm, r.theta_a, r.theta_b};
  }
  if (variant_sign_b(variant) < 0) {
    r = {-r.c_pm, r.c_pp, -r.c_mm, r.c_mp, r.theta_a, r.theta_b};
  }
  return r;
}

HardyReport check_conditions(const TwoQubitState& state,
                             const MeasurementSetup& setup,
                             HardyVariant variant, double zero_tol) {
  const int fa = variant_sign_a(variant);
  const int fb = variant_sign_b(variant);

  HardyReport r;
  r.p1a = joint_probability(state, fa, fb, setup.theta_a, setup.theta_b);
  r.p1b = joint_probability(state, -fa, -fb, setup.theta_a, setup.theta_b_prime);
  r.p1c = joint_probability(state, -fa, -fb, setup.theta_a_prime, setup.theta_b);
  r.p1d = joint_probability(state, -fa, -fb, setup.theta_a_prime,
                            setup.theta_b_prime);
  r.zero_tol = zero_tol;
  r.variant = variant;
  r.holds = r.zero_a_holds() && r.zero_b_holds() && r.zero_c_holds() &&
            r.nonzero_d_holds();
  return r;
}

double probability_closed_form(Angle theta_1, Angle theta_2) {
  const auto [s1, c1, s2, c2] = half_angles(theta_1, theta_2);
  const double s1s = s1 * s1, c1s = c1 * c1, s2s = s2 * s2, c2s = c2 * c2;
  const double den = s1s * c2s + c1s * s2s + s1s * s2s;
  if (den == 0.0) return 0.0;
  return (s1s * s2s * c1s * c2s) / den;
}

double probability_diagonal(Angle theta) {
  // sin^2(theta) cos^2(theta/2) / (4 cos^2(theta/2) + 4): the secant form
  // cleared of its pole at theta = pi.
  const double s = std::sin(theta.rad());
  const double c_half = std::cos(0.5 * theta.rad());
  const double c2 = c_half * c_half;
  return (s * s * c2) / (4.0 * c2 + 4.0);
}

DiagonalCoefficients diagonal_coefficients(Angle theta) {
  const MeasurementSetup setup = MeasurementSetup::from_relative(theta, theta);
  require_non_degenerate(setup);

  const double s = std::sin(0.5 * theta.rad());
  const double c = std::cos(0.5 * theta.rad());
  // Equivalent to (2 + tan^2)^(-1/2) and (1 + 2 cot^2)^(-1/2) in magnitude;
  // the common sign follows the general constructor.
  const double f = (s < 0.0 ? -1.0 : 1.0) / std::sqrt(1.0 + c * c);
  return {f * c, f * c, f * s};
}

UniqueSolution solve_unique(const MeasurementSetup& setup) {
  const auto [s1, c1, s2, c2] = half_angles(setup.theta_1(), setup.theta_2());

  // Homogeneous system on (c_pp, c_pm, c_mp, c_mm): the direct zero
  // condition, then the two rotated ones. Rows have unit norm, so an absolute
  // pivot threshold matches the angular degeneracy tolerance.
  double m[3][4] = {
      {1.0, 0.0, 0.0, 0.0},
      {0.0, 0.0, -s2, c2},
      {0.0, -s1, 0.0, c1},
  };
  constexpr int kRows = 3, kCols = 4;
  constexpr double kPivotTol = 1e-9;

  int pivot_col[kRows] = {-1, -1, -1};
  int rank = 0;
  for (int col = 0; col < kCols && rank < kRows; ++col) {
    int best = -1;
    double best_abs = kPivotTol;
    for (int row = rank; row < kRows; ++row) {
      if (std::fabs(m[row][col]) > best_abs) {
        best = row;
        best_abs = std::fabs(m[row][col]);
      }
    }
    if (best < 0) continue;
    for (int c = 0; c < kCols; ++c) std::swap(m[best][c], m[rank][c]);
    const double p = m[rank][col];
    for (int c = 0; c < kCols; ++c) m[rank][c] /= p;
    for (int row = 0; row < kRows; ++row) {
      if (row == rank) continue;
      const double f = m[row][col];
      if (f == 0.0) continue;
      for (int c = 0; c < kCols; ++c) m[row][c] -= f * m[rank][c];
    }
    pivot_col[rank] = col;
    ++rank;
  }

  bool is_pivot[kCols] = {false, false, false, false};
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;

  // Nullspace basis vector for the first free column.
  double v[kCols] = {0.0, 0.0, 0.0, 0.0};
  for (int col = 0; col < kCols; ++col) {
    if (is_pivot[col]) continue;
    v[col] = 1.0;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][col];
    break;
  }
  const double n =
      std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  for (double& x : v) x /= n;

  UniqueSolution out;
  out.dimension = kCols - rank;
  out.state = {v[0], v[1], v[2], v[3], setup.theta_a, setup.theta_b};
  return out;
}

}  // namespace hardylab
