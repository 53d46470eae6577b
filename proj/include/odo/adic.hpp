// Exact arithmetic on q-adic rationals and the clopen measure algebra of the
// q-adic odometer.
//
// A level-k cylinder [w] (0 <= w < q^k) is the set of q-adic integers x with
// x = w mod q^k. Every clopen set is a finite union of cylinders of a single
// level; ClopenSet keeps the coarsest such level.
#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace odo {

using Integer = mpz_class;
using Rational = mpq_class;
using Residue = std::uint64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A level, residue space or machine integer exceeded its configured limit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Current maximum level for sets and elements (default 24).
unsigned level_cap();
void set_level_cap(unsigned cap);

/// Hard ceiling on the number of residues materialized at one level.
inline constexpr Residue kMaxResidues = Residue{1} << 28;

/// q^k as a machine integer; throws ResourceError when k exceeds the level cap
/// or q^k exceeds kMaxResidues.
Residue residue_count(unsigned base, unsigned level);

void check_base(unsigned base);

Integer power_of(unsigned base, unsigned exponent);

std::string to_string(const Integer& value);
/// Reduced "a/b" form; integers render as "a/1".
std::string to_string(const Rational& value);

/// Exact number numerator / base^exponent in canonical form: exponent == 0 or
/// base does not divide numerator.
class AdicRational {
 public:
  explicit AdicRational(unsigned base = 2);
  AdicRational(unsigned base, Integer numerator, unsigned exponent = 0);

  static AdicRational from_integer(unsigned base, const Integer& value) {
    return AdicRational(base, value, 0);
  }

  unsigned base() const { return base_; }
  const Integer& numerator() const { return numerator_; }
  unsigned exponent() const { return exponent_; }
  Integer denominator() const { return power_of(base_, exponent_); }

  bool is_zero() const { return numerator_ == 0; }
  bool is_integer() const { return exponent_ == 0; }
  int sign() const { return sgn(numerator_); }

  Rational to_rational() const;
  double to_double() const;
  std::string str() const { return to_string(to_rational()); }

  AdicRational abs() const { return AdicRational(base_, ::abs(numerator_), exponent_); }
  AdicRational operator-() const { return AdicRational(base_, -numerator_, exponent_); }

  friend AdicRational operator+(const AdicRational& a, const AdicRational& b);
  friend AdicRational operator-(const AdicRational& a, const AdicRational& b);
  friend AdicRational operator*(const AdicRational& a, const AdicRational& b);
  friend AdicRational operator*(const AdicRational& a, const Integer& k);

  AdicRational& operator+=(const AdicRational& other) { return *this = *this + other; }
  AdicRational& operator-=(const AdicRational& other) { return *this = *this - other; }

  friend bool operator==(const AdicRational& a, const AdicRational& b);
  friend std::strong_ordering operator<=>(const AdicRational& a, const AdicRational& b);

 private:
  void canonicalize();

  unsigned base_;
  Integer numerator_;
  unsigned exponent_;
};

/// a / b as an ordinary rational (b nonzero).
Rational ratio(const AdicRational& a, const AdicRational& b);

std::ostream& operator<<(std::ostream& os, const AdicRational& value);

enum class SetOp { Union, Intersect, Difference, SymDiff };

/// Finite union of cylinders of the q-adic odometer, stored as sorted residues
/// at the canonical minimal level.
class ClopenSet {
 public:
  explicit ClopenSet(unsigned base = 2);

  /// Validates 0 <= w < q^level and canonicalizes. Duplicates are merged.
  static ClopenSet from_classes(unsigned base, unsigned level, std::vector<Residue> classes);
  static ClopenSet empty(unsigned base) { return ClopenSet(base); }
  static ClopenSet full(unsigned base);
  /// The single cylinder [w] at the given level.
  static ClopenSet cylinder(unsigned base, unsigned level, Residue w);

  unsigned base() const { return base_; }
  unsigned level() const { return level_; }
  std::span<const Residue> classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }

  bool is_empty() const { return classes_.empty(); }
  bool is_full() const { return level_ == 0 && classes_.size() == 1; }

  /// Residues of this set at a level >= level(), ascending.
  std::vector<Residue> classes_at(unsigned level) const;
  /// Membership bitmap of length q^level for a level >= level().
  std::vector<char> indicator(unsigned level) const;
  bool contains(Residue w, unsigned at_level) const;

  AdicRational measure() const;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

 private:
  unsigned base_;
  unsigned level_ = 0;
  std::vector<Residue> classes_;
};

/// Canonical form of a raw class set. Same as ClopenSet::from_classes.
ClopenSet normalize(unsigned base, unsigned level, std::vector<Residue> classes);

ClopenSet boolean(const ClopenSet& s, const ClopenSet& t, SetOp op);
ClopenSet complement(const ClopenSet& s);
inline ClopenSet unite(const ClopenSet& s, const ClopenSet& t) { return boolean(s, t, SetOp::Union); }
inline ClopenSet intersect(const ClopenSet& s, const ClopenSet& t) {
  return boolean(s, t, SetOp::Intersect);
}
inline ClopenSet difference(const ClopenSet& s, const ClopenSet& t) {
  return boolean(s, t, SetOp::Difference);
}
bool disjoint(const ClopenSet& s, const ClopenSet& t);
bool subset(const ClopenSet& s, const ClopenSet& t);

/// Image of s under T^n, T the odometer x -> x + 1.
ClopenSet translate(const ClopenSet& s, std::int64_t n);

/// Nonnegative residue of n modulo m.
inline Residue mod_residue(std::int64_t n, Residue m) {
  const auto sm = static_cast<std::int64_t>(m);
  if (n >= 0 && n < sm) return static_cast<Residue>(n);
  if (n < 0 && n >= -sm) return static_cast<Residue>(n + sm);
  auto r = n % sm;
  if (r < 0) r += sm;
  return static_cast<Residue>(r);
}

/// (a + b) mod m for a, b < m.
inline Residue add_residue(Residue a, Residue b, Residue m) {
  const Residue s = a + b;
  return s >= m ? s - m : s;
}

void require_same_base(unsigned a, unsigned b);

// Overflow-checked int64 arithmetic for cocycle values; throws ResourceError.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t to_int64(const Integer& value);

}  // namespace odo
