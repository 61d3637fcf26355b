#pragma once

#include <array>

#include "hardylab/angle.hpp"
#include "hardylab/spinalg.hpp"
#include "hardylab/state.hpp"

namespace hardylab {

enum class Side { A, B };

// Reduced one-particle density matrix of `state`, over the eigenbasis of the
// labeled direction on the requested side.
SymMatrix2 reduced_density(const TwoQubitState& state, Side side);

// Two-term biorthogonal form of a real two-qubit state:
//
//   sign_plus  * sqrt(lambda_plus)  |S(phi_a)=+1>|S(phi_b)=+1>
// + sign_minus * sqrt(lambda_minus) |S(phi_a)=-1>|S(phi_b)=-1>
//
// phi_a and phi_b are normalized into [0, 2*pi). When the reduced-density
// eigenvalues coincide within 1e-12 the angles are not determined; the
// degenerate flag is set and the angles are left at zero.
struct SchmidtForm {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  Angle phi_a;
  Angle phi_b;
  int sign_plus = +1;
  int sign_minus = +1;
  bool degenerate = false;
};

// Diagonalizes both reduced densities and resolves the sign ambiguity by
// picking the sign pattern whose reconstruction is closest to the input
// state; ties are broken toward the all-plus pattern.
SchmidtForm decompose(const TwoQubitState& state);

// Rebuilds the state described by `form` in the (theta_a, theta_b) product
// basis.
TwoQubitState reconstruct(const SchmidtForm& form, Angle theta_a,
                          Angle theta_b);

enum class EntanglementTag { Product, Partial, Maximal };

struct EntanglementClass {
  EntanglementTag tag = EntanglementTag::Product;
  // 2 * sqrt(lambda_plus * lambda_minus); for states with vanishing c_pp this
  // equals 2 |c_pm c_mp|.
  double concurrence_like = 0.0;
};

// Maximal when both eigenvalues are 1/2 within 1e-12, Product when the
// smaller one vanishes within 1e-12, Partial otherwise.
EntanglementClass classify(const SchmidtForm& form);

// Closed-form reduced-density eigenvector components for the golden-angle
// state, all-positive coefficient branch. (f, g) are the up/down components
// for the larger (plus) and smaller (minus) eigenvalue.
struct GoldenEigenvectors {
  double f_plus = 0.0;
  double g_plus = 0.0;
  double f_minus = 0.0;
  double g_minus = 0.0;
};
GoldenEigenvectors golden_eigenvectors();

// Left-hand sides of the four conditions a product state
// |S(phi_a)=-1>|S(phi_b)=-1> would have to satisfy to reproduce the
// contradiction, and whether they are jointly satisfiable (they never are:
// the first three force the fourth to vanish).
struct ProductConditions {
  std::array<double, 4> lhs{};  // three zero conditions, then the nonzero one
  bool compatible = false;
};
ProductConditions product_state_conditions(Angle phi_a, Angle phi_b,
                                           const MeasurementSetup& setup);

}  // namespace hardylab
