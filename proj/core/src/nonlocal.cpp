#include "hardylab/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "hardylab/spinalg.hpp"

namespace hardylab {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kLowConfidenceTrials = 100;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGoldenGamma;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double canonical_double(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Exact outcome distributions for the four setting pairs, with cumulative
// sums for inverse-transform draws.
struct SettingDistributions {
  double p[4][4];
  double cum[4][4];
};

SettingDistributions distributions(const TwoQubitState& state,
                                   const MeasurementSetup& setup) {
  const Angle dir_a[2] = {setup.theta_a, setup.theta_a_prime};
  const Angle dir_b[2] = {setup.theta_b, setup.theta_b_prime};
  SettingDistributions d;
  for (int s = 0; s < 4; ++s) {
    const Angle da = dir_a[s >> 1];
    const Angle db = dir_b[s & 1];
    double acc = 0.0;
    for (int out = 0; out < 4; ++out) {
      const int out_a = (out & 2) ? -1 : +1;
      const int out_b = (out & 1) ? -1 : +1;
      const double p =
          std::max(0.0, joint_probability(state, out_a, out_b, da, db));
      d.p[s][out] = p;
      acc += p;
      d.cum[s][out] = acc;
    }
  }
  return d;
}

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", p);
  return buf;
}

}  // namespace

std::array<LhvStrategy, 16> all_strategies() {
  std::array<LhvStrategy, 16> out{};
  int i = 0;
  for (const int a : {+1, -1}) {
    for (const int ap : {+1, -1}) {
      for (const int b : {+1, -1}) {
        for (const int bp : {+1, -1}) {
          out[i++] = {a, ap, b, bp};
        }
      }
    }
  }
  return out;
}

std::vector<LhvStrategy> enumerate_consistent(HardyVariant variant) {
  const int fa = variant_sign_a(variant);
  const int fb = variant_sign_b(variant);
  std::vector<LhvStrategy> out;
  for (const LhvStrategy& s : all_strategies()) {
    const bool violates_a = (s.a == fa && s.b == fb);
    const bool violates_b = (s.a == -fa && s.b_prime == -fb);
    const bool violates_c = (s.a_prime == -fa && s.b == -fb);
    if (!violates_a && !violates_b && !violates_c) out.push_back(s);
  }
  return out;
}

double lhv_bound(HardyVariant variant) {
  const int fa = variant_sign_a(variant);
  const int fb = variant_sign_b(variant);
  // A mixture maximum over a polytope sits on a vertex, so scanning the
  // consistent deterministic strategies suffices.
  double bound = 0.0;
  for (const LhvStrategy& s : enumerate_consistent(variant)) {
    const double indicator =
        (s.a_prime == -fa && s.b_prime == -fb) ? 1.0 : 0.0;
    bound = std::max(bound, indicator);
  }
  return bound;
}

ChainTrace logic_chain(const HardyReport& report) {
  if (!report.holds) {
    throw NotAHardyState(
        "inference chain requires a report whose conditions hold");
  }
  const int fa = variant_sign_a(report.variant);
  const int fb = variant_sign_b(report.variant);
  const auto sgn = [](int s) { return s > 0 ? "+1" : "-1"; };

  ChainTrace t;
  t.steps[0].statement = std::string("the joint outcome (a'=") + sgn(-fa) +
                         ", b'=" + sgn(-fb) + ") occurs with probability " +
                         format_probability(report.p1d) + " > 0";
  t.steps[0].probability = report.p1d;
  t.steps[1].statement = std::string("P(a'=") + sgn(-fa) + ", b=" + sgn(-fb) +
                         ") = 0, so under local realism a measurement of the "
                         "unprimed b direction would have given b=" +
                         sgn(fb);
  t.steps[1].probability = report.p1c;
  t.steps[2].statement = std::string("P(a=") + sgn(-fa) + ", b'=" + sgn(-fb) +
                         ") = 0, so under local realism a measurement of the "
                         "unprimed a direction would have given a=" +
                         sgn(fa);
  t.steps[2].probability = report.p1b;
  t.steps[3].statement = std::string("locality therefore demands P(a=") +
                         sgn(fa) + ", b=" + sgn(fb) + ") >= " +
                         format_probability(report.p1d) +
                         ", but that probability is 0";
  t.steps[3].probability = report.p1a;
  t.contradiction_magnitude = report.p1d;
  return t;
}

std::uint64_t chunk_seed(std::uint64_t root_seed, std::uint64_t chunk) {
  return splitmix64(root_seed ^ ((chunk + 1) * kGoldenGamma));
}

SampleStats sample_chunk(const TwoQubitState& state,
                         const MeasurementSetup& setup, std::uint64_t root_seed,
                         std::uint64_t chunk, std::uint64_t trials) {
  const SettingDistributions d = distributions(state, setup);
  std::mt19937_64 eng(chunk_seed(root_seed, chunk));

  SampleStats stats;
  stats.seed = root_seed;
  stats.n_total = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int setting =
        std::min(3, static_cast<int>(canonical_double(eng) * 4.0));
    const double u = canonical_double(eng);
    int outcome = -1;
    for (int k = 0; k < 4; ++k) {
      if (u < d.cum[setting][k]) {
        outcome = k;
        break;
      }
    }
    if (outcome < 0) {
      // u fell beyond the rounded total; take the last outcome that has
      // nonzero probability so that impossible outcomes stay impossible.
      for (int k = 3; k >= 0; --k) {
        if (d.p[setting][k] > 0.0) {
          outcome = k;
          break;
        }
      }
    }
    ++stats.counts[setting][outcome];
  }
  return stats;
}

SampleStats sample(const TwoQubitState& state, const MeasurementSetup& setup,
                   std::uint64_t n, std::uint64_t seed) {
  SampleStats stats;
  stats.seed = seed;
  stats.n_total = n;
  for (std::uint64_t chunk = 0, done = 0; done < n; ++chunk) {
    const std::uint64_t trials = std::min(kSampleChunk, n - done);
    const SampleStats part = sample_chunk(state, setup, seed, chunk, trials);
    for (int s = 0; s < 4; ++s) {
      for (int o = 0; o < 4; ++o) stats.counts[s][o] += part.counts[s][o];
    }
    done += trials;
  }
  return stats;
}

EstimatedReport estimate_report(const SampleStats& stats, double zero_tol,
                                HardyVariant variant) {
  EstimatedReport out;
  for (int s = 0; s < 4; ++s) {
    out.setting_trials[s] = stats.setting_trials(s);
    if (out.setting_trials[s] == 0) {
      throw InsufficientSamples("no trials recorded for setting pair " +
                                std::to_string(s));
    }
  }
  out.low_confidence =
      *std::min_element(out.setting_trials.begin(), out.setting_trials.end()) <
      kLowConfidenceTrials;

  const int fa = variant_sign_a(variant);
  const int fb = variant_sign_b(variant);
  // Condition k reads one outcome cell of one setting pair.
  const int setting_of[4] = {0, 1, 2, 3};
  const int cell_of[4] = {outcome_index(fa, fb), outcome_index(-fa, -fb),
                          outcome_index(-fa, -fb), outcome_index(-fa, -fb)};

  double freq[4];
  double thr[4];
  for (int k = 0; k < 4; ++k) {
    const double n_s = static_cast<double>(out.setting_trials[setting_of[k]]);
    freq[k] =
        static_cast<double>(stats.counts[setting_of[k]][cell_of[k]]) / n_s;
    if (zero_tol >= 0.0) {
      thr[k] = zero_tol;
    } else {
      // five binomial standard errors, with the rate floored at one count so
      // an observed zero still gets a positive allowance
      const double q = std::clamp(std::max(freq[k], 1.0 / n_s), 0.0, 1.0);
      thr[k] = 5.0 * std::sqrt(q * (1.0 - q) / n_s);
    }
  }

  HardyReport& r = out.report;
  r.p1a = freq[0];
  r.p1b = freq[1];
  r.p1c = freq[2];
  r.p1d = freq[3];
  r.variant = variant;
  r.zero_tol =
      zero_tol >= 0.0 ? zero_tol : std::max({thr[0], thr[1], thr[2], thr[3]});
  r.holds = freq[0] <= thr[0] && freq[1] <= thr[1] && freq[2] <= thr[2] &&
            freq[3] > thr[3];
  return out;
}

}  // namespace hardylab
