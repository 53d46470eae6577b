// Concentration of distance functionals on symmetric groups under the
// normalized L1 and Hamming metrics: exact profiles by enumeration (n <= 8)
// and seeded Monte Carlo profiles.
//
// Random source: std::mt19937_64 seeded with splitmix64-mixed (seed, stream).
// Bounded draws use rejection sampling; permutations come from the
// decreasing-index Fisher-Yates shuffle. Monte Carlo runs use kStreams
// streams on separate threads and merge their histograms in stream order, so
// results depend only on (n, samples, seed).
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "odo/permutation.hpp"

namespace odo {

inline constexpr unsigned kStreams = 8;

class PermSampler {
 public:
  PermSampler(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform permutation of {0..n-1} written into `images` (resized to n).
  void shuffle(std::size_t n, std::vector<std::uint32_t>& images);
  Permutation next(std::size_t n);

 private:
  std::mt19937_64 rng_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// First permutation of stream 0 for this seed.
Permutation sample_uniform_perm(std::size_t n, std::uint64_t seed);

enum class Functional { DistToIdentity, DistToFixed };

std::string to_string(Functional f);
Functional parse_functional(const std::string& name);

struct ConcentrationProfile {
  std::size_t n = 0;
  PermMetric metric = PermMetric::L1;
  Functional functional = Functional::DistToIdentity;
  Permutation reference;                 ///< tau0 (identity for DistToIdentity)
  /// counts[j] = number of permutations (exact) or samples with n f = j.
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;               ///< n! or the sample count
  Rational median;                       ///< lower median of f
  std::vector<Rational> epsilons;
  std::vector<Rational> alpha_exact;     ///< only for exact profiles
  std::vector<double> alpha;             ///< P(|f - median| > eps)
  std::vector<double> ci_halfwidth;      ///< 1.96 sqrt(a(1-a)/N); 0 for exact
  std::optional<std::uint64_t> samples;  ///< empty for exact profiles

  bool exact() const { return !samples.has_value(); }
  /// Distribution of f as (value, probability) pairs with nonzero mass.
  std::vector<std::pair<Rational, Rational>> distribution() const;
};

/// Grid eps_j = j D / 20, j = 0..20, with D = ceil(n/2) for L1 and 1 for
/// Hamming.
std::vector<Rational> default_epsilons(std::size_t n, PermMetric metric);

/// Reference point for DistToFixed: a uniform permutation drawn from a stream
/// reserved for it.
Permutation reference_point(std::size_t n, std::uint64_t seed);

ConcentrationProfile exact_profile(std::size_t n, PermMetric metric, Functional functional,
                                   const std::vector<Rational>& epsilons = {},
                                   std::optional<Permutation> reference = std::nullopt);

ConcentrationProfile mc_profile(std::size_t n, PermMetric metric, Functional functional, std::uint64_t samples,
                                std::uint64_t seed, const std::vector<Rational>& epsilons = {},
                                std::optional<Permutation> reference = std::nullopt);

inline constexpr std::size_t kMaxExactN = 8;

}  // namespace odo
