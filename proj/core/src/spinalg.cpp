#include "hardylab/spinalg.hpp"

#include <cassert>
#include <cmath>

namespace hardylab {

SpinVector eigenvector(Angle theta_ref, Angle theta, int sign) {
  assert(sign == +1 || sign == -1);
  const double h = 0.5 * (theta - theta_ref).rad();
  const double c = std::cos(h);
  const double s = std::sin(h);
  if (sign > 0) return {c, s};
  return {-s, c};
}

double overlap(const SpinVector& u, const SpinVector& v) {
  return u.up * v.up + u.down * v.down;
}

double joint_probability(const TwoQubitState& state, int out_a, int out_b,
                         Angle dir_a, Angle dir_b) {
  const SpinVector va = eigenvector(state.theta_a, dir_a, out_a);
  const SpinVector vb = eigenvector(state.theta_b, dir_b, out_b);
  const double amp = state.c_pp * va.up * vb.up + state.c_pm * va.up * vb.down +
                     state.c_mp * va.down * vb.up +
                     state.c_mm * va.down * vb.down;
  return amp * amp;
}

EigenPair2 eig_sym2(const SymMatrix2& m) {
  constexpr double kDegenerateTol = 1e-12;

  const double mean = 0.5 * (m.a11 + m.a22);
  const double half_diff = 0.5 * (m.a11 - m.a22);
  const double r = std::hypot(half_diff, m.a12);

  EigenPair2 out;
  out.lambda_plus = mean + r;
  out.lambda_minus = mean - r;
  out.degenerate = (out.lambda_plus - out.lambda_minus) <= kDegenerateTol;

  // Eigenvector for lambda_plus from whichever row of (m - lambda_plus I)
  // gives the better-conditioned expression.
  const double d1 = out.lambda_plus - m.a11;
  const double d2 = out.lambda_plus - m.a22;
  SpinVector v;
  if (std::fabs(d1) >= std::fabs(d2)) {
    v = {m.a12, d1};
  } else {
    v = {d2, m.a12};
  }
  const double n = std::sqrt(v.norm_squared());
  if (n > 0.0) {
    v.up /= n;
    v.down /= n;
  } else {
    v = {1.0, 0.0};  // scalar matrix: any orthonormal pair works
  }
  out.v_plus = v;
  out.v_minus = {-v.down, v.up};
  return out;
}

}  // namespace hardylab
