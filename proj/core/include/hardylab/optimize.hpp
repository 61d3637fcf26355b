#pragma once

#include <cstddef>
#include <vector>

#include "hardylab/angle.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/golden.hpp"

namespace hardylab {

// Contradiction probability evaluated on a uniform inclusive grid over
// [0, 360] x [0, 360] degrees. Values are stored row-major: rows follow
// theta_1, columns theta_2.
struct GridScan {
  std::vector<Angle> theta_1_axis;
  std::vector<Angle> theta_2_axis;
  std::vector<double> values;
  std::size_t resolution = 0;

  double value(std::size_t i, std::size_t j) const {
    return values[i * resolution + j];
  }
};

// Evaluates the grid with `resolution` points per axis (endpoints included).
// threads = 0 picks a default; any partition of rows across threads yields
// bit-identical values because each cell is an independent pure evaluation.
GridScan scan(int resolution, int threads = 0);

struct Optimum {
  Angle theta_1;
  Angle theta_2;
  double p_max = 0.0;
};

// Locates all local maxima of the probability surface: coarse grid seeding
// followed by coordinate-wise golden-section refinement. Peaks closer than
// one degree on both axes are merged. Results are sorted by (theta_1,
// theta_2); refine_tol is the bracket width, in radians, at which refinement
// stops.
std::vector<Optimum> find_maxima(int coarse_resolution = 181,
                                 double refine_tol = 1e-9);

// Squared overlaps between the primed and unprimed eigenvectors for one
// relative angle, next to the direct half-angle squares they must equal.
struct AxisGoldenCheck {
  double cos2_half = 0.0;  // should be 1/tau at an optimum
  double sin2_half = 0.0;  // should be 1 - 1/tau
  double ov_mm = 0.0;      // |<S(theta')=-1|S(theta)=-1>|^2, = cos2_half
  double ov_mp = 0.0;      // |<S(theta')=-1|S(theta)=+1>|^2, = sin2_half
  double ov_pm = 0.0;      // |<S(theta')=+1|S(theta)=-1>|^2, = sin2_half
  double ov_pp = 0.0;      // |<S(theta')=+1|S(theta)=+1>|^2, = cos2_half
};

struct GoldenCheck {
  AxisGoldenCheck axis1;
  AxisGoldenCheck axis2;
  double max_deviation = 0.0;          // worst distance from 1/tau, 1 - 1/tau
  double tau_identity_residual = 0.0;  // |2/tau^2 + 1/tau^3 - 1|
};

// Verifies that an optimum sits at the golden angles: both relative angles
// must satisfy cos^2(theta/2) = 1/tau, checked directly and through actual
// eigenvector overlaps. Throws NotGolden when any deviation exceeds 1e-4.
GoldenCheck verify_golden(const Optimum& optimum);

}  // namespace hardylab
