#include "odo/permutation.hpp"

#include <numeric>

namespace odo {

Permutation::Permutation(std::size_t n) : images_(n) {
  if (n == 0) throw ValidationError("permutation size must be at least 1");
  std::iota(images_.begin(), images_.end(), 0u);
}

Permutation Permutation::from_images(std::vector<std::uint32_t> images) {
  if (images.empty()) throw ValidationError("permutation size must be at least 1");
  std::vector<char> hit(images.size(), 0);
  for (auto i : images) {
    if (i >= images.size() || hit[i])
      throw ValidationError("images do not form a permutation of {0.." +
                            std::to_string(images.size() - 1) + "}");
    hit[i] = 1;
  }
  Permutation p(1);
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::cycle(std::size_t n, std::span<const std::uint32_t> points) {
  Permutation p(n);
  std::vector<char> hit(n, 0);
  for (auto x : points) {
    if (x >= n || hit[x]) throw ValidationError("cycle points must be distinct and below n");
    hit[x] = 1;
  }
  for (std::size_t i = 0; i < points.size(); ++i) p.images_[points[i]] = points[(i + 1) % points.size()];
  return p;
}

Permutation Permutation::reversal(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p.images_[i] = static_cast<std::uint32_t>(n - 1 - i);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p(size());
  for (std::size_t i = 0; i < size(); ++i) p.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return p;
}

Integer Permutation::order() const {
  Integer result = 1;
  std::vector<char> seen(size(), 0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    unsigned long len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j], ++len) seen[j] = 1;
    Integer l(len);
    mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), l.get_mpz_t());
  }
  return result;
}

bool Permutation::is_even() const {
  std::size_t transpositions = 0;
  std::vector<char> seen(size(), 0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j], ++len) seen[j] = 1;
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

Permutation operator*(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size()) throw ValidationError("permutation size mismatch");
  std::vector<std::uint32_t> images(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) images[i] = s(t(i));
  return Permutation::from_images(std::move(images));
}

std::uint64_t perm_metric_numerator(std::span<const std::uint32_t> s, std::span<const std::uint32_t> t,
                                    PermMetric kind) {
  std::uint64_t total = 0;
  if (kind == PermMetric::L1) {
    for (std::size_t i = 0; i < s.size(); ++i) total += s[i] > t[i] ? s[i] - t[i] : t[i] - s[i];
  } else {
    for (std::size_t i = 0; i < s.size(); ++i) total += s[i] != t[i];
  }
  return total;
}

Rational perm_metric(const Permutation& s, const Permutation& t, PermMetric kind) {
  if (s.size() != t.size()) throw ValidationError("permutation size mismatch");
  Rational r(Integer(static_cast<unsigned long>(perm_metric_numerator(s.images(), t.images(), kind))),
             Integer(static_cast<unsigned long>(s.size())));
  r.canonicalize();
  return r;
}

std::string to_string(PermMetric kind) { return kind == PermMetric::L1 ? "l1" : "hamming"; }

PermMetric parse_perm_metric(const std::string& name) {
  if (name == "l1" || name == "d_L1" || name == "L1") return PermMetric::L1;
  if (name == "hamming" || name == "ham") return PermMetric::Hamming;
  throw ValidationError("unknown permutation metric '" + name + "' (expected l1 or hamming)");
}

}  // namespace odo
