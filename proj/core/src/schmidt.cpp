#include "hardylab/schmidt.hpp"

#include <algorithm>
#include <cmath>

namespace hardylab {

namespace {

constexpr double kEigDegenerateTol = 1e-12;
constexpr double kClassTol = 1e-12;
constexpr double kProductTol = 1e-12;

// Flips a unit vector so its first nonzero component is positive; fixes the
// orientation before an angle is read off the components.
SpinVector canonical(SpinVector v) {
  if (v.up < 0.0 || (v.up == 0.0 && v.down < 0.0)) {
    return {-v.up, -v.down};
  }
  return v;
}

Angle angle_of(SpinVector v, Angle basis_label) {
  // v = (cos d/2, sin d/2) for the +1 eigenvector of S(basis_label + d).
  const double d = 2.0 * std::atan2(v.down, v.up);
  return (basis_label + Angle::radians(d)).normalized();
}

double reconstruction_distance(const SchmidtForm& form,
                               const TwoQubitState& target) {
  const TwoQubitState r = reconstruct(form, target.theta_a, target.theta_b);
  const double d_pp = r.c_pp - target.c_pp;
  const double d_pm = r.c_pm - target.c_pm;
  const double d_mp = r.c_mp - target.c_mp;
  const double d_mm = r.c_mm - target.c_mm;
  return d_pp * d_pp + d_pm * d_pm + d_mp * d_mp + d_mm * d_mm;
}

}  // namespace

SymMatrix2 reduced_density(const TwoQubitState& state, Side side) {
  // With the coefficient matrix C (rows = side a, columns = side b) the
  // reduced densities are C C^T and C^T C.
  const double pp = state.c_pp, pm = state.c_pm;
  const double mp = state.c_mp, mm = state.c_mm;
  if (side == Side::A) {
    return {pp * pp + pm * pm, pp * mp + pm * mm, mp * mp + mm * mm};
  }
  return {pp * pp + mp * mp, pp * pm + mp * mm, pm * pm + mm * mm};
}

SchmidtForm decompose(const TwoQubitState& state) {
  const SymMatrix2 rho_a = reduced_density(state, Side::A);
  const SymMatrix2 rho_b = reduced_density(state, Side::B);
  const EigenPair2 ea = eig_sym2(rho_a);
  const EigenPair2 eb = eig_sym2(rho_b);

  SchmidtForm form;
  form.lambda_plus = ea.lambda_plus;
  form.lambda_minus = std::max(0.0, ea.lambda_minus);
  form.degenerate = (ea.lambda_plus - ea.lambda_minus) <= kEigDegenerateTol;
  if (form.degenerate) {
    return form;  // angles undefined; leave them at zero
  }

  form.phi_a = angle_of(canonical(ea.v_plus), state.theta_a);
  form.phi_b = angle_of(canonical(eb.v_plus), state.theta_b);

  // The eigenvectors fix both angles only up to orientation; search the four
  // sign patterns for the one that reproduces the input, preferring the
  // all-plus pattern on ties.
  SchmidtForm best = form;
  double best_dist = -1.0;
  for (const int sp : {+1, -1}) {
    for (const int sm : {+1, -1}) {
      SchmidtForm candidate = form;
      candidate.sign_plus = sp;
      candidate.sign_minus = sm;
      const double dist = reconstruction_distance(candidate, state);
      if (best_dist < 0.0 || dist < best_dist) {
        best_dist = dist;
        best = candidate;
      }
    }
  }
  return best;
}

TwoQubitState reconstruct(const SchmidtForm& form, Angle theta_a,
                          Angle theta_b) {
  const SpinVector ua = eigenvector(theta_a, form.phi_a, +1);
  const SpinVector va = eigenvector(theta_a, form.phi_a, -1);
  const SpinVector ub = eigenvector(theta_b, form.phi_b, +1);
  const SpinVector vb = eigenvector(theta_b, form.phi_b, -1);
  const double cp = form.sign_plus * std::sqrt(form.lambda_plus);
  const double cm = form.sign_minus * std::sqrt(form.lambda_minus);

  TwoQubitState s;
  s.c_pp = cp * ua.up * ub.up + cm * va.up * vb.up;
  s.c_pm = cp * ua.up * ub.down + cm * va.up * vb.down;
  s.c_mp = cp * ua.down * ub.up + cm * va.down * vb.up;
  s.c_mm = cp * ua.down * ub.down + cm * va.down * vb.down;
  s.theta_a = theta_a;
  s.theta_b = theta_b;
  return s;
}

EntanglementClass classify(const SchmidtForm& form) {
  EntanglementClass out;
  out.concurrence_like =
      2.0 * std::sqrt(std::max(0.0, form.lambda_plus * form.lambda_minus));
  if (std::fabs(form.lambda_plus - 0.5) <= kClassTol) {
    out.tag = EntanglementTag::Maximal;
  } else if (form.lambda_minus <= kProductTol) {
    out.tag = EntanglementTag::Product;
  } else {
    out.tag = EntanglementTag::Partial;
  }
  return out;
}

GoldenEigenvectors golden_eigenvectors() {
  // Surd forms; every radicand is a small positive combination of sqrt 5.
  const double s5 = std::sqrt(5.0);
  const double disc = std::sqrt(6.0 * s5 - 13.0);
  const double g_num = std::sqrt(10.0 * s5 - 22.0);
  const double cross = std::sqrt(106.0 * s5 - 237.0);
  const double den_plus = std::sqrt(12.0 * s5 - 26.0 - 2.0 * cross);
  const double den_minus = std::sqrt(12.0 * s5 - 26.0 + 2.0 * cross);

  GoldenEigenvectors out;
  out.f_plus = (2.0 - s5 + disc) / den_plus;
  out.g_plus = g_num / den_plus;
  out.f_minus = (2.0 - s5 - disc) / den_minus;
  out.g_minus = g_num / den_minus;
  return out;
}

ProductConditions product_state_conditions(Angle phi_a, Angle phi_b,
                                           const MeasurementSetup& setup) {
  constexpr double kZero = 1e-12;
  const double da = 0.5 * (setup.theta_a - phi_a).rad();
  const double db = 0.5 * (setup.theta_b - phi_b).rad();
  const double dap = 0.5 * (setup.theta_a_prime - phi_a).rad();
  const double dbp = 0.5 * (setup.theta_b_prime - phi_b).rad();

  ProductConditions out;
  out.lhs[0] = std::sin(da) * std::sin(db);
  out.lhs[1] = std::cos(da) * std::cos(dbp);
  out.lhs[2] = std::cos(dap) * std::cos(db);
  out.lhs[3] = std::cos(dap) * std::cos(dbp);
  out.compatible = std::fabs(out.lhs[0]) <= kZero &&
                   std::fabs(out.lhs[1]) <= kZero &&
                   std::fabs(out.lhs[2]) <= kZero &&
                   std::fabs(out.lhs[3]) > kZero;
  return out;
}

}  // namespace hardylab
