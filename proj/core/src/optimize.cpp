#include "hardylab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hardylab/hardy.hpp"
#include "hardylab/spinalg.hpp"

namespace hardylab {

namespace {

constexpr double kDedupSeparationDeg = 1.0;
constexpr double kGoldenDeviationLimit = 1e-4;

int resolve_threads(int threads, int rows) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  return std::clamp(threads, 1, rows);
}

struct Probe {
  double x = 0.0;
  double f = -1.0;

  void consider(double cx, double cf) {
    if (cf > f) {
      x = cx;
      f = cf;
    }
  }
};

// Golden-section maximization on [lo, hi], tracking the best evaluated point
// so the result never falls below the value at `seed`.
template <typename F>
Probe golden_max(F f, double lo, double hi, double tol, double seed) {
  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kInvPhi2 = 1.0 - kInvPhi;

  Probe best;
  best.consider(seed, f(seed));

  double a = lo, b = hi;
  double h = b - a;
  double x1 = a + kInvPhi2 * h;
  double x2 = a + kInvPhi * h;
  double f1 = f(x1);
  double f2 = f(x2);
  best.consider(x1, f1);
  best.consider(x2, f2);
  while (h > tol) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      h = b - a;
      x1 = a + kInvPhi2 * h;
      f1 = f(x1);
      best.consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      h = b - a;
      x2 = a + kInvPhi * h;
      f2 = f(x2);
      best.consider(x2, f2);
    }
  }
  return best;
}

AxisGoldenCheck check_axis(Angle theta) {
  const double half = 0.5 * theta.rad();
  AxisGoldenCheck c;
  c.cos2_half = std::cos(half) * std::cos(half);
  c.sin2_half = std::sin(half) * std::sin(half);

  // Same quantities through actual eigenvector overlaps: the primed
  // direction sits at `theta` relative to the unprimed one.
  const Angle ref = Angle::radians(0.0);
  const SpinVector up = eigenvector(ref, ref, +1);
  const SpinVector dn = eigenvector(ref, ref, -1);
  const SpinVector up_p = eigenvector(ref, theta, +1);
  const SpinVector dn_p = eigenvector(ref, theta, -1);
  const auto sq = [](double x) { return x * x; };
  c.ov_mm = sq(overlap(dn_p, dn));
  c.ov_mp = sq(overlap(dn_p, up));
  c.ov_pm = sq(overlap(up_p, dn));
  c.ov_pp = sq(overlap(up_p, up));
  return c;
}

double axis_deviation(const AxisGoldenCheck& c) {
  const double inv_tau = 1.0 / golden_mean();
  const double comp = 1.0 - inv_tau;
  return std::max({std::fabs(c.cos2_half - inv_tau),
                   std::fabs(c.sin2_half - comp), std::fabs(c.ov_mm - inv_tau),
                   std::fabs(c.ov_mp - comp), std::fabs(c.ov_pm - comp),
                   std::fabs(c.ov_pp - inv_tau)});
}

}  // namespace

GridScan scan(int resolution, int threads) {
  if (resolution < 2) {
    throw std::invalid_argument("scan resolution must be at least 2");
  }
  const std::size_t n = static_cast<std::size_t>(resolution);
  const double step_deg = 360.0 / static_cast<double>(resolution - 1);

  GridScan g;
  g.resolution = n;
  g.theta_1_axis.reserve(n);
  g.theta_2_axis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Angle a = Angle::degrees(static_cast<double>(i) * step_deg);
    g.theta_1_axis.push_back(a);
    g.theta_2_axis.push_back(a);
  }
  g.values.assign(n * n, 0.0);

  const int workers = resolve_threads(threads, resolution);
  const auto fill_rows = [&g, n](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        g.values[i * n + j] =
            probability_closed_form(g.theta_1_axis[i], g.theta_2_axis[j]);
      }
    }
  };
  if (workers == 1) {
    fill_rows(0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t per = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t first = std::min(n, w * per);
      const std::size_t last = std::min(n, first + per);
      if (first < last) pool.emplace_back(fill_rows, first, last);
    }
    for (std::thread& t : pool) t.join();
  }
  return g;
}

std::vector<Optimum> find_maxima(int coarse_resolution, double refine_tol) {
  if (coarse_resolution < 16) {
    throw std::invalid_argument("coarse resolution must be at least 16");
  }
  if (refine_tol <= 0.0) {
    throw std::invalid_argument("refine tolerance must be positive");
  }

  const GridScan g = scan(coarse_resolution);
  const std::size_t n = g.resolution;
  const double step_rad = kTwoPi / static_cast<double>(n - 1);

  // Grid cells that dominate their neighborhood seed the refinement.
  std::vector<std::pair<std::size_t, std::size_t>> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = g.value(i, j);
      if (v <= 1e-15) continue;
      bool dominated = false;
      for (int di = -1; di <= 1 && !dominated; ++di) {
        for (int dj = -1; dj <= 1 && !dominated; ++dj) {
          if (di == 0 && dj == 0) continue;
          const std::int64_t ni = static_cast<std::int64_t>(i) + di;
          const std::int64_t nj = static_cast<std::int64_t>(j) + dj;
          if (ni < 0 || nj < 0 || ni >= static_cast<std::int64_t>(n) ||
              nj >= static_cast<std::int64_t>(n)) {
            continue;
          }
          if (g.value(ni, nj) > v) dominated = true;
        }
      }
      if (!dominated) seeds.emplace_back(i, j);
    }
  }

  const auto eval = [](double t1, double t2) {
    return probability_closed_form(Angle::radians(t1), Angle::radians(t2));
  };

  std::vector<Optimum> refined;
  for (const auto& [i, j] : seeds) {
    double t1 = g.theta_1_axis[i].rad();
    double t2 = g.theta_2_axis[j].rad();
    double value = g.value(i, j);
    for (int sweep = 0; sweep < 60; ++sweep) {
      const Probe p1 = golden_max([&](double x) { return eval(x, t2); },
                                  std::max(0.0, t1 - step_rad),
                                  std::min(kTwoPi, t1 + step_rad), refine_tol,
                                  t1);
      const double move1 = std::fabs(p1.x - t1);
      t1 = p1.x;
      const Probe p2 = golden_max([&](double x) { return eval(t1, x); },
                                  std::max(0.0, t2 - step_rad),
                                  std::min(kTwoPi, t2 + step_rad), refine_tol,
                                  t2);
      const double move2 = std::fabs(p2.x - t2);
      t2 = p2.x;
      value = p2.f;
      if (move1 < refine_tol && move2 < refine_tol) break;
    }
    refined.push_back({Angle::radians(t1), Angle::radians(t2), value});
  }

  // Merge refinements that landed on the same peak, keeping the higher value.
  std::sort(refined.begin(), refined.end(),
            [](const Optimum& a, const Optimum& b) { return a.p_max > b.p_max; });
  std::vector<Optimum> unique;
  for (const Optimum& cand : refined) {
    bool duplicate = false;
    for (const Optimum& kept : unique) {
      if (std::fabs((cand.theta_1 - kept.theta_1).deg()) <
              kDedupSeparationDeg &&
          std::fabs((cand.theta_2 - kept.theta_2).deg()) <
              kDedupSeparationDeg) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) unique.push_back(cand);
  }
  std::sort(unique.begin(), unique.end(), [](const Optimum& a, const Optimum& b) {
    if (a.theta_1.rad() != b.theta_1.rad()) {
      return a.theta_1.rad() < b.theta_1.rad();
    }
    return a.theta_2.rad() < b.theta_2.rad();
  });
  return unique;
}

GoldenCheck verify_golden(const Optimum& optimum) {
  GoldenCheck out;
  out.axis1 = check_axis(optimum.theta_1);
  out.axis2 = check_axis(optimum.theta_2);
  out.max_deviation = std::max(axis_deviation(out.axis1),
                               axis_deviation(out.axis2));
  const double tau = golden_mean();
  out.tau_identity_residual =
      std::fabs(2.0 / (tau * tau) + 1.0 / (tau * tau * tau) - 1.0);
  if (out.max_deviation > kGoldenDeviationLimit) {
    throw NotGolden("optimum deviates from the golden angles by " +
                    std::to_string(out.max_deviation));
  }
  return out;
}

}  // namespace hardylab
