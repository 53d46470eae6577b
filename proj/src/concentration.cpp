#include "odo/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace odo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

PermSampler::PermSampler(std::uint64_t seed, std::uint64_t stream)
    : rng_(splitmix64(splitmix64(seed) ^ stream)) {}

std::uint64_t PermSampler::below(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng_();
  while (x >= limit);
  return x % bound;
}

void PermSampler::shuffle(std::size_t n, std::vector<std::uint32_t>& images) {
  images.resize(n);
  std::iota(images.begin(), images.end(), 0u);
  for (std::size_t i = n; i-- > 1;) std::swap(images[i], images[below(i + 1)]);
}

Permutation PermSampler::next(std::size_t n) {
  if (n == 0) throw ValidationError("permutation size must be at least 1");
  std::vector<std::uint32_t> images;
  shuffle(n, images);
  return Permutation::from_images(std::move(images));
}

Permutation sample_uniform_perm(std::size_t n, std::uint64_t seed) { return PermSampler(seed, 0).next(n); }

namespace {

constexpr std::uint64_t kReferenceStream = 0xffffffffull;

std::uint64_t max_numerator(std::size_t n, PermMetric metric) {
  return metric == PermMetric::L1 ? n * n / 2 : n;
}

void finish(ConcentrationProfile& p, const std::vector<Rational>& epsilons) {
  p.epsilons = epsilons.empty() ? default_epsilons(p.n, p.metric) : epsilons;
  std::uint64_t cumulative = 0;
  std::uint64_t median = 0;
  for (std::size_t j = 0; j < p.counts.size(); ++j) {
    cumulative += p.counts[j];
    if (2 * cumulative >= p.total) {
      median = j;
      break;
    }
  }
  p.median = Rational(Integer(static_cast<unsigned long>(median)), Integer(static_cast<unsigned long>(p.n)));
  p.median.canonicalize();

  const Integer n(static_cast<unsigned long>(p.n));
  for (const auto& eps : p.epsilons) {
    if (eps < 0) throw ValidationError("epsilon must be nonnegative");
    // |j - median| / n > eps  <=>  |j - median| den > num n
    const Integer threshold = eps.get_num() * n;
    std::uint64_t outside = 0;
    for (std::size_t j = 0; j < p.counts.size(); ++j) {
      const std::uint64_t gap = j > median ? j - median : median - j;
      if (Integer(static_cast<unsigned long>(gap)) * eps.get_den() > threshold) outside += p.counts[j];
    }
    const Rational a(Integer(static_cast<unsigned long>(outside)), Integer(static_cast<unsigned long>(p.total)));
    const double value = static_cast<double>(outside) / static_cast<double>(p.total);
    p.alpha.push_back(value);
    if (p.exact()) {
      Rational reduced = a;
      reduced.canonicalize();
      p.alpha_exact.push_back(reduced);
      p.ci_halfwidth.push_back(0.0);
    } else {
      p.ci_halfwidth.push_back(1.96 * std::sqrt(value * (1.0 - value) / static_cast<double>(p.total)));
    }
  }
}

Permutation resolve_reference(std::size_t n, Functional functional, std::optional<Permutation> reference,
                              std::uint64_t seed) {
  if (functional == Functional::DistToIdentity) return Permutation(n);
  if (!reference) return reference_point(n, seed);
  if (reference->size() != n) throw ValidationError("reference permutation has the wrong size");
  return *reference;
}

}  // namespace

std::string to_string(Functional f) { return f == Functional::DistToIdentity ? "dist-to-identity" : "dist-to-fixed"; }

Functional parse_functional(const std::string& name) {
  if (name == "dist-to-identity" || name == "identity") return Functional::DistToIdentity;
  if (name == "dist-to-fixed" || name == "fixed") return Functional::DistToFixed;
  throw ValidationError("unknown functional '" + name + "' (expected dist-to-identity or dist-to-fixed)");
}

std::vector<std::pair<Rational, Rational>> ConcentrationProfile::distribution() const {
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    Rational value(Integer(static_cast<unsigned long>(j)), Integer(static_cast<unsigned long>(n)));
    Rational mass(Integer(static_cast<unsigned long>(counts[j])), Integer(static_cast<unsigned long>(total)));
    value.canonicalize();
    mass.canonicalize();
    out.emplace_back(value, mass);
  }
  return out;
}

std::vector<Rational> default_epsilons(std::size_t n, PermMetric metric) {
  const unsigned long d = metric == PermMetric::L1 ? (n + 1) / 2 : 1;
  std::vector<Rational> out;
  for (unsigned long j = 0; j <= 20; ++j) {
    Rational e(Integer(j * d), Integer(20));
    e.canonicalize();
    out.push_back(e);
  }
  return out;
}

Permutation reference_point(std::size_t n, std::uint64_t seed) { return PermSampler(seed, kReferenceStream).next(n); }

ConcentrationProfile exact_profile(std::size_t n, PermMetric metric, Functional functional,
                                   const std::vector<Rational>& epsilons, std::optional<Permutation> reference) {
  if (n == 0) throw ValidationError("n must be at least 1");
  if (n > kMaxExactN) throw ResourceError("exact profiles enumerate S_n only for n <= 8");
  ConcentrationProfile p;
  p.n = n;
  p.metric = metric;
  p.functional = functional;
  p.reference = resolve_reference(n, functional, std::move(reference), 1);
  p.counts.assign(max_numerator(n, metric) + 1, 0);
  std::vector<std::uint32_t> s(n);
  std::iota(s.begin(), s.end(), 0u);
  do {
    ++p.counts[perm_metric_numerator(s, p.reference.images(), metric)];
    ++p.total;
  } while (std::next_permutation(s.begin(), s.end()));
  finish(p, epsilons);
  return p;
}

ConcentrationProfile mc_profile(std::size_t n, PermMetric metric, Functional functional, std::uint64_t samples,
                                std::uint64_t seed, const std::vector<Rational>& epsilons,
                                std::optional<Permutation> reference) {
  if (n == 0) throw ValidationError("n must be at least 1");
  if (samples == 0) throw ValidationError("samples must be at least 1");
  ConcentrationProfile p;
  p.n = n;
  p.metric = metric;
  p.functional = functional;
  p.reference = resolve_reference(n, functional, std::move(reference), seed);
  p.samples = samples;
  p.total = samples;
  const std::size_t width = max_numerator(n, metric) + 1;

  std::vector<std::vector<std::uint64_t>> histograms(kStreams, std::vector<std::uint64_t>(width, 0));
  std::vector<std::thread> workers;
  for (unsigned s = 0; s < kStreams; ++s) {
    const std::uint64_t share = samples / kStreams + (s < samples % kStreams ? 1 : 0);
    workers.emplace_back([&, s, share] {
      PermSampler sampler(seed, s);
      std::vector<std::uint32_t> images;
      auto& h = histograms[s];
      const auto ref = p.reference.images();
      for (std::uint64_t i = 0; i < share; ++i) {
        sampler.shuffle(n, images);
        ++h[perm_metric_numerator(images, ref, metric)];
      }
    });
  }
  for (auto& w : workers) w.join();
  p.counts.assign(width, 0);
  for (const auto& h : histograms)
    for (std::size_t j = 0; j < width; ++j) p.counts[j] += h[j];
  finish(p, epsilons);
  return p;
}

}  // namespace odo
