#pragma once

// Independent oracles for the density functions: exhaustive enumeration of
// all S-subsets at tiny scale, seeded Monte Carlo at moderate scale, and
// direct counting checks of the class-size and co-neighbourhood formulas.

#include <cstdint>
#include <string>
#include <vector>

#include "codedensity/codespace.hpp"
#include "codedensity/density_bounds.hpp"
#include "codedensity/numeric.hpp"

namespace codedensity {

struct EstimatorLimits {
  std::uint64_t max_objects = 10'000'000;         ///< enumerated vectors/subspaces
  std::uint64_t max_pair_evaluations = 100'000'000;  ///< distance-table entries plus subset-search checks

  WorkLimits object_limits() const { return {max_objects}; }
};

enum class EnumerationMode { Pruned, Naive };

struct ExactDensity {
  Count favourable;  ///< S-subsets with minimum distance >= d
  Count total;       ///< binom(M, S)
  Rational density;
  std::uint64_t pair_evaluations = 0;
};

struct EstimateResult {
  Rational point_estimate;
  Rational ci_low;
  Rational ci_high;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t base_seed = 0;
  Rational confidence_level{99, 100};
  /// True when the interval is one-sided (no successes or no failures).
  bool one_sided = false;
};

struct MonteCarloConfig {
  std::uint64_t trials = 100'000;
  std::uint64_t base_seed = 0;
  unsigned workers = 1;
  Rational confidence_level{99, 100};
};

struct VerificationReport {
  std::string quantity;
  Count formula_value;
  Count brute_force_value;
  bool match = false;
};

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);
/// Seed of the i-th trial's stream: splitmix64(splitmix64(base_seed) + i).
std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t trial);

/// Clopper-Pearson interval at the given level; one-sided when successes is 0 or trials.
EstimateResult clopper_pearson(std::uint64_t successes, std::uint64_t trials, const Rational& confidence_level);

// Exact density by enumeration over S-subsets. d = 1 returns 1 without enumerating.
ExactDensity exact_density_hamming(const HammingParams& p, const EstimatorLimits& limits = {},
                                   EnumerationMode mode = EnumerationMode::Pruned, unsigned workers = 1);
/// Enumerates G_q(original_k, n), so duality is exercised rather than assumed.
ExactDensity exact_density_injection(const SubspaceParams& p, const EstimatorLimits& limits = {},
                                     EnumerationMode mode = EnumerationMode::Pruned, unsigned workers = 1);

/// Counts S-subsets of {0..size-1} that are cliques of the symmetric row-major `compatible` relation.
ExactDensity count_compatible_subsets(const std::vector<std::uint8_t>& compatible, std::uint64_t size,
                                      std::uint64_t S, const EstimatorLimits& limits, EnumerationMode mode,
                                      unsigned workers);

EstimateResult mc_density_hamming(const HammingParams& p, const MonteCarloConfig& config);
EstimateResult mc_density_injection(const SubspaceParams& p, const MonteCarloConfig& config);

/// Materializes the close pairs of F_q^n and counts the association classes directly.
std::vector<VerificationReport> verify_claim_a(std::uint64_t q, unsigned n, unsigned d,
                                               const EstimatorLimits& limits = {});
/// Counts codes containing representative unions from each association class.
std::vector<VerificationReport> verify_w_formula(std::uint64_t q, unsigned n, unsigned d, std::uint64_t S,
                                                 const EstimatorLimits& limits = {});
/// Class sizes over the close pairs of G_q(k, n).
std::vector<VerificationReport> verify_injection_claims(std::uint64_t q, unsigned n, unsigned k, unsigned d,
                                                        const EstimatorLimits& limits = {});

/// Brute-force ball sizes around `centers` seeded random centres, for every radius.
std::vector<VerificationReport> verify_hamming_balls(std::uint64_t q, unsigned n, unsigned centers, std::uint64_t seed,
                                                     const EstimatorLimits& limits = {});
/// With centers = 0 every subspace is used as a centre.
std::vector<VerificationReport> verify_injection_balls(std::uint64_t q, unsigned n, unsigned k, unsigned centers,
                                                       std::uint64_t seed, const EstimatorLimits& limits = {});

struct NonisolatedCheck {
  /// Left degree and every co-neighbourhood count, against their closed forms.
  std::vector<VerificationReport> regularity;
  Count nonisolated;  ///< codes containing at least one close pair
  Rational lower;
  Count upper;
  bool within_bounds = false;

  bool ok() const;
};

/// Materializes the bipartite graph (close pairs of F_q^n) x (S-subsets) and
/// checks it against the profile and both non-isolated bounds.
NonisolatedCheck verify_nonisolated_bounds(std::uint64_t q, unsigned n, unsigned d, std::uint64_t S,
                                           const EstimatorLimits& limits = {});

}  // namespace codedensity
