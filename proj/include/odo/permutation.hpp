#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "odo/adic.hpp"

namespace odo {

/// Bijection of {0, ..., n-1}.
class Permutation {
 public:
  explicit Permutation(std::size_t n = 1);  // identity

  static Permutation from_images(std::vector<std::uint32_t> images);
  /// The cycle c[0] -> c[1] -> ... -> c[last] -> c[0] in S_n.
  static Permutation cycle(std::size_t n, std::span<const std::uint32_t> points);
  static Permutation cycle(std::size_t n, std::initializer_list<std::uint32_t> points) {
    return cycle(n, std::span<const std::uint32_t>(points.begin(), points.size()));
  }
  static Permutation transposition(std::size_t n, std::uint32_t a, std::uint32_t b) {
    return cycle(n, {a, b});
  }
  static Permutation reversal(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::uint32_t operator()(std::size_t i) const { return images_[i]; }
  std::span<const std::uint32_t> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Integer order() const;
  bool is_even() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

/// (s * t)(i) = s(t(i)): apply t first.
Permutation operator*(const Permutation& s, const Permutation& t);

enum class PermMetric { L1, Hamming };

/// d_L1(s, t) = (1/n) sum |s(i) - t(i)|; d_ham(s, t) = (1/n) #{i : s(i) != t(i)}.
Rational perm_metric(const Permutation& s, const Permutation& t, PermMetric kind);
/// n * perm_metric(s, t, kind), an integer.
std::uint64_t perm_metric_numerator(std::span<const std::uint32_t> s, std::span<const std::uint32_t> t,
                                    PermMetric kind);

std::string to_string(PermMetric kind);
PermMetric parse_perm_metric(const std::string& name);

}  // namespace odo
