#include "odo/adic.hpp"

#include <algorithm>
#include <atomic>
#include <iterator>
#include <limits>
#include <ostream>

namespace odo {

namespace {

std::atomic<unsigned> g_level_cap{24};

}  // namespace

unsigned level_cap() { return g_level_cap.load(std::memory_order_relaxed); }

void set_level_cap(unsigned cap) { g_level_cap.store(cap, std::memory_order_relaxed); }

void check_base(unsigned base) {
  if (base < 2) throw ValidationError("base must be at least 2, got " + std::to_string(base));
  if (base > 1u << 16) throw ValidationError("base too large: " + std::to_string(base));
}

void require_same_base(unsigned a, unsigned b) {
  if (a != b)
    throw ValidationError("base mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

Residue residue_count(unsigned base, unsigned level) {
  check_base(base);
  if (level > level_cap())
    throw ResourceError("level " + std::to_string(level) + " exceeds level cap " +
                        std::to_string(level_cap()));
  Residue n = 1;
  for (unsigned i = 0; i < level; ++i) {
    n *= base;
    if (n > kMaxResidues)
      throw ResourceError("residue space " + std::to_string(base) + "^" + std::to_string(level) +
                          " is too large to materialize");
  }
  return n;
}

Integer power_of(unsigned base, unsigned exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("cocycle value overflows int64");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ResourceError("cocycle value overflows int64");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("cocycle value overflows int64");
  return r;
}

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw ResourceError("integer " + value.get_str() + " overflows int64");
  return value.get_si();
}

// ---------------------------------------------------------------------------
// AdicRational

AdicRational::AdicRational(unsigned base) : base_(base), numerator_(0), exponent_(0) {
  check_base(base);
}

AdicRational::AdicRational(unsigned base, Integer numerator, unsigned exponent)
    : base_(base), numerator_(std::move(numerator)), exponent_(exponent) {
  check_base(base);
  canonicalize();
}

void AdicRational::canonicalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  Integer quotient;
  while (exponent_ > 0) {
    if (mpz_divisible_ui_p(numerator_.get_mpz_t(), base_) == 0) break;
    mpz_divexact_ui(quotient.get_mpz_t(), numerator_.get_mpz_t(), base_);
    numerator_.swap(quotient);
    --exponent_;
  }
}

Rational AdicRational::to_rational() const {
  Rational r(numerator_, denominator());
  r.canonicalize();
  return r;
}

double AdicRational::to_double() const { return to_rational().get_d(); }

namespace {

// Numerators of a and b scaled to the common exponent.
std::pair<Integer, Integer> align(const AdicRational& a, const AdicRational& b, unsigned& exponent) {
  require_same_base(a.base(), b.base());
  exponent = std::max(a.exponent(), b.exponent());
  Integer na = a.numerator() * power_of(a.base(), exponent - a.exponent());
  Integer nb = b.numerator() * power_of(b.base(), exponent - b.exponent());
  return {std::move(na), std::move(nb)};
}

}  // namespace

AdicRational operator+(const AdicRational& a, const AdicRational& b) {
  unsigned e;
  auto [na, nb] = align(a, b, e);
  return AdicRational(a.base(), na + nb, e);
}

AdicRational operator-(const AdicRational& a, const AdicRational& b) {
  unsigned e;
  auto [na, nb] = align(a, b, e);
  return AdicRational(a.base(), na - nb, e);
}

AdicRational operator*(const AdicRational& a, const AdicRational& b) {
  require_same_base(a.base(), b.base());
  return AdicRational(a.base(), a.numerator() * b.numerator(), a.exponent() + b.exponent());
}

AdicRational operator*(const AdicRational& a, const Integer& k) {
  return AdicRational(a.base(), a.numerator() * k, a.exponent());
}

bool operator==(const AdicRational& a, const AdicRational& b) {
  require_same_base(a.base(), b.base());
  return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
}

std::strong_ordering operator<=>(const AdicRational& a, const AdicRational& b) {
  unsigned e;
  auto [na, nb] = align(a, b, e);
  const int c = cmp(na, nb);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational ratio(const AdicRational& a, const AdicRational& b) {
  require_same_base(a.base(), b.base());
  if (b.is_zero()) throw ValidationError("ratio: division by zero");
  Rational r = a.to_rational() / b.to_rational();
  r.canonicalize();
  return r;
}

std::ostream& operator<<(std::ostream& os, const AdicRational& value) { return os << value.str(); }

// ---------------------------------------------------------------------------
// ClopenSet

ClopenSet::ClopenSet(unsigned base) : base_(base) { check_base(base); }

ClopenSet ClopenSet::full(unsigned base) {
  ClopenSet s(base);
  s.classes_ = {0};
  return s;
}

ClopenSet ClopenSet::cylinder(unsigned base, unsigned level, Residue w) {
  return from_classes(base, level, {w});
}

ClopenSet ClopenSet::from_classes(unsigned base, unsigned level, std::vector<Residue> classes) {
  const Residue n = residue_count(base, level);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (!classes.empty() && classes.back() >= n)
    throw ValidationError("class " + std::to_string(classes.back()) + " out of range for level " +
                          std::to_string(level) + " (q^k = " + std::to_string(n) + ")");

  // Coarsen while membership of w depends only on w mod q^(level-1).
  std::vector<std::uint32_t> counts;
  Residue size = n;
  while (level > 0 && classes.size() % base == 0) {
    const Residue coarse = size / base;
    counts.assign(coarse, 0);
    for (Residue c : classes) ++counts[c % coarse];
    const bool uniform =
        std::all_of(counts.begin(), counts.end(), [&](std::uint32_t k) { return k == 0 || k == base; });
    if (!uniform) break;
    std::vector<Residue> reduced;
    reduced.reserve(classes.size() / base);
    for (Residue c : classes) {
      if (c >= coarse) break;
      reduced.push_back(c);
    }
    classes = std::move(reduced);
    size = coarse;
    --level;
  }

  ClopenSet s(base);
  if (classes.empty()) return s;
  s.level_ = level;
  s.classes_ = std::move(classes);
  return s;
}

std::vector<Residue> ClopenSet::classes_at(unsigned level) const {
  if (level < level_) throw ValidationError("cannot express a set below its canonical level");
  const Residue n = residue_count(base_, level);
  const Residue own = residue_count(base_, level_);
  std::vector<Residue> out;
  out.reserve(classes_.size() * (n / own));
  for (Residue offset = 0; offset < n; offset += own)
    for (Residue c : classes_) out.push_back(c + offset);
  return out;
}

std::vector<char> ClopenSet::indicator(unsigned level) const {
  if (level < level_) throw ValidationError("cannot express a set below its canonical level");
  const Residue n = residue_count(base_, level);
  const Residue own = residue_count(base_, level_);
  std::vector<char> bits(n, 0);
  for (Residue offset = 0; offset < n; offset += own)
    for (Residue c : classes_) bits[c + offset] = 1;
  return bits;
}

bool ClopenSet::contains(Residue w, unsigned at_level) const {
  if (at_level < level_) throw ValidationError("membership queried below the canonical level");
  const Residue own = residue_count(base_, level_);
  return std::binary_search(classes_.begin(), classes_.end(), w % own);
}

AdicRational ClopenSet::measure() const {
  return AdicRational(base_, Integer(static_cast<unsigned long>(classes_.size())), level_);
}

ClopenSet normalize(unsigned base, unsigned level, std::vector<Residue> classes) {
  return ClopenSet::from_classes(base, level, std::move(classes));
}

ClopenSet boolean(const ClopenSet& s, const ClopenSet& t, SetOp op) {
  require_same_base(s.base(), t.base());
  const unsigned level = std::max(s.level(), t.level());
  const auto a = s.classes_at(level);
  const auto b = t.classes_at(level);
  std::vector<Residue> out;
  switch (op) {
    case SetOp::Union:
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
    case SetOp::Intersect:
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
    case SetOp::Difference:
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
    case SetOp::SymDiff:
      std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
  }
  return ClopenSet::from_classes(s.base(), level, std::move(out));
}

ClopenSet complement(const ClopenSet& s) { return difference(ClopenSet::full(s.base()), s); }

bool disjoint(const ClopenSet& s, const ClopenSet& t) { return intersect(s, t).is_empty(); }

bool subset(const ClopenSet& s, const ClopenSet& t) { return difference(s, t).is_empty(); }

ClopenSet translate(const ClopenSet& s, std::int64_t n) {
  const Residue size = residue_count(s.base(), s.level());
  const Residue shift = mod_residue(n, size);
  std::vector<Residue> out;
  out.reserve(s.size());
  for (Residue c : s.classes()) out.push_back((c + shift) % size);
  return ClopenSet::from_classes(s.base(), s.level(), std::move(out));
}

}  // namespace odo
