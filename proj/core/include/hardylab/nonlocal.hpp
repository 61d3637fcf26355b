#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hardylab/errors.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/state.hpp"

namespace hardylab {

// A deterministic local assignment of outcomes to all four directions.
struct LhvStrategy {
  int a = +1;
  int a_prime = +1;
  int b = +1;
  int b_prime = +1;

  bool operator==(const LhvStrategy&) const = default;
};

// All sixteen deterministic strategies, in a fixed enumeration order.
std::array<LhvStrategy, 16> all_strategies();

// The strategies consistent with the three zero conditions of `variant`.
// Exactly five survive, and none of them assigns the outcome pair that the
// fourth condition requires, which is the local bound of zero.
std::vector<LhvStrategy> enumerate_consistent(HardyVariant variant);

// Largest probability any mixture of consistent strategies can give the
// fourth condition's outcome pair. Always zero; computed by enumeration.
double lhv_bound(HardyVariant variant);

// One step of the local-realistic inference chain, with the probability it
// rests on.
struct ChainStep {
  std::string statement;
  double probability = 0.0;
};

struct ChainTrace {
  std::array<ChainStep, 4> steps{};
  double contradiction_magnitude = 0.0;  // the nonzero condition probability
};

// Spells out how the three zero conditions plus locality force an outcome
// that the first condition forbids. Throws NotAHardyState when the report's
// conditions do not hold.
ChainTrace logic_chain(const HardyReport& report);

// Index order of the four setting pairs in sampling statistics.
enum class SettingPair : int {
  AB = 0,           // (theta_a,  theta_b)
  ABPrime = 1,      // (theta_a,  theta_b')
  APrimeB = 2,      // (theta_a', theta_b)
  APrimeBPrime = 3  // (theta_a', theta_b')
};

// Joint outcome cells are indexed (+,+)=0, (+,-)=1, (-,+)=2, (-,-)=3.
inline constexpr int outcome_index(int out_a, int out_b) {
  return (out_a < 0 ? 2 : 0) + (out_b < 0 ? 1 : 0);
}

struct SampleStats {
  // counts[setting][outcome]
  std::array<std::array<std::uint64_t, 4>, 4> counts{};
  std::uint64_t n_total = 0;
  std::uint64_t seed = 0;

  std::uint64_t setting_trials(int setting) const {
    const auto& row = counts[static_cast<std::size_t>(setting)];
    return row[0] + row[1] + row[2] + row[3];
  }
};

// Trials per chunk of the deterministic sampling scheme.
inline constexpr std::uint64_t kSampleChunk = 65536;

// Seed of chunk `chunk` derived from the root seed; see sample().
std::uint64_t chunk_seed(std::uint64_t root_seed, std::uint64_t chunk);

// Counts for one chunk of `trials` consecutive trials. Workers may split a
// run by taking disjoint chunk ranges; summing their counts reproduces the
// single-threaded result exactly.
SampleStats sample_chunk(const TwoQubitState& state,
                         const MeasurementSetup& setup, std::uint64_t root_seed,
                         std::uint64_t chunk, std::uint64_t trials);

// Simulates `n` trials: each trial draws one of the four setting pairs
// uniformly, then an outcome pair from the state's exact joint distribution.
//
// Determinism contract: trials are processed in chunks of kSampleChunk; chunk
// k uses a std::mt19937_64 engine seeded with
//   splitmix64(seed xor ((k + 1) * 0x9E3779B97F4A7C15)),
// and uniform variates are (engine() >> 11) * 2^-53. Identical seeds produce
// identical counts on any platform, regardless of how chunks are partitioned
// across workers.
SampleStats sample(const TwoQubitState& state, const MeasurementSetup& setup,
                   std::uint64_t n, std::uint64_t seed);

// Empirical condition frequencies as a report, with per-setting trial counts.
struct EstimatedReport {
  HardyReport report;
  std::array<std::uint64_t, 4> setting_trials{};
  bool low_confidence = false;  // some setting has fewer than 100 trials
};

// Builds a report from sampled counts. A negative zero_tol selects the
// statistical default: a condition frequency counts as zero when it is within
// five binomial standard errors of zero. Throws InsufficientSamples when a
// setting pair has no trials.
EstimatedReport estimate_report(const SampleStats& stats,
                                double zero_tol = -1.0,
                                HardyVariant variant = HardyVariant::Original);

}  // namespace hardylab
