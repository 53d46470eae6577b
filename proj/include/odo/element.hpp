// Elements of the topological full group of the q-adic odometer T.
//
// An element U of level k is given by an integer cocycle n_w on the residues
// w in [0, q^k): U acts on the cylinder [w] as x -> x + n_w. Bijectivity of U
// is equivalent to w -> (w + n_w) mod q^k being a permutation. Since the
// odometer is free, d(x, U(x)) = |n_w| along the orbit.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "odo/adic.hpp"

namespace odo {

/// Raised when a cocycle does not define a bijection. Carries two residues
/// sent to the same image.
class NotBijective : public ValidationError {
 public:
  NotBijective(Residue first, Residue second, Residue image);
  Residue first;
  Residue second;
  Residue image;
};

class NotPeriodic : public Error {
 public:
  NotPeriodic(std::vector<Residue> witness, std::int64_t sum, unsigned level);
  std::vector<Residue> witness;  ///< one sigma-cycle, starting at its least residue
  std::int64_t sum;              ///< nonzero cocycle sum along the witness
  unsigned level;
};

/// Cocycle data at an explicit, not necessarily canonical, level.
struct CocycleTable {
  unsigned base = 2;
  unsigned level = 0;
  std::vector<std::int64_t> values;
};

class Element {
 public:
  /// Identity of the given base.
  explicit Element(unsigned base = 2);

  /// Validates bijectivity and canonicalizes.
  static Element from_cocycle(unsigned base, unsigned level, std::vector<std::int64_t> values);
  static Element from_cocycle(CocycleTable table) {
    return from_cocycle(table.base, table.level, std::move(table.values));
  }
  static Element identity(unsigned base) { return Element(base); }
  /// T^n, the n-th power of the odometer.
  static Element odometer(unsigned base, std::int64_t n = 1);

  unsigned base() const { return base_; }
  unsigned level() const { return level_; }
  std::span<const std::int64_t> cocycle() const { return values_; }
  Residue residues() const { return values_.size(); }

  bool is_identity() const { return level_ == 0 && values_[0] == 0; }

  /// n_w for a residue w of a level >= level().
  std::int64_t value(Residue w) const {
    return w < values_.size() ? values_[w] : values_[w % values_.size()];
  }
  /// sigma(w) at this element's own level.
  Residue image(Residue w) const;

  friend bool operator==(const Element&, const Element&) = default;

 private:
  unsigned base_;
  unsigned level_ = 0;
  std::vector<std::int64_t> values_;
};

/// Same transformation expressed at level k >= level(U).
CocycleTable refine(const Element& u, unsigned level);

/// sigma(w) = (w + n_w) mod q^k for a table.
std::vector<Residue> permutation_of(const CocycleTable& table);

/// U o V: apply V first. Cocycle c(w) = c_V(w) + c_U(sigma_V(w)).
Element compose(const Element& u, const Element& v);
Element inverse(const Element& u);
/// U^e for any integer e; cost linear in q^level, independent of |e|.
Element power(const Element& u, const Integer& e);
inline Element power(const Element& u, std::int64_t e) { return power(u, Integer(static_cast<long>(e))); }
/// [U, V] = U V U^-1 V^-1.
Element commutator(const Element& u, const Element& v);

/// Integral of the cocycle; always an integer.
Integer index(const Element& u);
ClopenSet support(const Element& u);
/// U(S).
ClopenSet image(const Element& u, const ClopenSet& s);
/// U on S, identity elsewhere. S must be U-invariant.
Element restrict_to(const Element& u, const ClopenSet& s);

// Metrics. d1 and du are exact; linf is an exact integer; dp is approximate.
AdicRational d1(const Element& u, const Element& v);
AdicRational du(const Element& u, const Element& v);
Integer linf(const Element& u, const Element& v);
/// (integral |c_U - c_V|^p)^(1/p) in double precision for p >= 1. Terms are
/// summed in ascending order of magnitude.
double dp(const Element& u, const Element& v, double p);
inline AdicRational norm1(const Element& u) { return d1(Element(u.base()), u); }

enum class MetricKind { D1, Du, Linf, Dp };
using MetricValue = std::variant<AdicRational, Integer, double>;
MetricValue metric(const Element& u, const Element& v, MetricKind kind, double p = 1.0);

/// One sigma-cycle at a fixed level: residues in orbit order starting from
/// the least one, and the sum of the cocycle along it.
struct Cycle {
  std::vector<Residue> residues;
  std::int64_t sum = 0;
};

/// All sigma-cycles of the table in ascending order of least residue.
std::vector<Cycle> cycles(const CocycleTable& table);
inline std::vector<Cycle> cycles(const Element& u) { return cycles(refine(u, u.level())); }

}  // namespace odo
