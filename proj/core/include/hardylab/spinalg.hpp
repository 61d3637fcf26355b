#pragma once

#include "hardylab/angle.hpp"
#include "hardylab/state.hpp"

namespace hardylab {

// Real amplitude pair over a declared reference eigenbasis. `up` multiplies
// the +1 eigenvector of the reference direction, `down` the -1 eigenvector.
struct SpinVector {
  double up = 0.0;
  double down = 0.0;

  double norm_squared() const { return up * up + down * down; }
};

// |S(theta)=sign> expressed in the eigenbasis of S(theta_ref).
//
// With d = theta - theta_ref the components are (cos d/2, sin d/2) for
// sign=+1 and (-sin d/2, cos d/2) for sign=-1; the half angle is what makes a
// full turn flip the global sign while leaving every probability unchanged.
SpinVector eigenvector(Angle theta_ref, Angle theta, int sign);

// Inner product of two real spin vectors over the same reference basis.
double overlap(const SpinVector& u, const SpinVector& v);

// Probability that joint spin measurements along dir_a and dir_b on `state`
// give out_a and out_b (each +1 or -1). The state's basis labels fix the
// meaning of its coefficients; the directions may be any angles.
double joint_probability(const TwoQubitState& state, int out_a, int out_b,
                         Angle dir_a, Angle dir_b);

// Symmetric 2x2 matrix, e.g. a reduced one-particle density matrix.
struct SymMatrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a12; }
};

struct EigenPair2 {
  double lambda_plus = 0.0;   // larger eigenvalue
  double lambda_minus = 0.0;  // smaller eigenvalue
  SpinVector v_plus;          // unit eigenvector for lambda_plus
  SpinVector v_minus;         // unit eigenvector for lambda_minus
  bool degenerate = false;    // eigenvalues equal within 1e-12
};

// Stable closed-form eigensolver for a symmetric 2x2 matrix. Eigenvectors are
// orthonormal; in the degenerate case an arbitrary orthonormal pair is
// returned with the flag set.
EigenPair2 eig_sym2(const SymMatrix2& m);

}  // namespace hardylab
