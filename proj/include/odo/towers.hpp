// Rokhlin towers of the odometer over clopen bases, the induced embeddings of
// finite symmetric groups, first-return maps, and the elementary generators
// (swap involutions, basic 3-cycles) built from them.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "odo/element.hpp"
#include "odo/permutation.hpp"

namespace odo {

/// A, T(A), ..., T^(N-1)(A) with N maximal such that the levels are pairwise
/// disjoint.
struct TowerSpec {
  ClopenSet base_set;
  std::uint64_t height = 0;
  std::vector<ClopenSet> levels;
  ClopenSet covered;  ///< union of the levels
};

/// Height of the tower over A: the least j >= 1 with T^j(A) meeting A.
std::uint64_t tower_height(const ClopenSet& a);
TowerSpec rokhlin_tower(const ClopenSet& a);

/// Element acting as T^(s(i) - i) on level i of the tower and as the identity
/// off it. Requires s.size() == tower.height.
Element rho_embed(const TowerSpec& tower, const Permutation& s);

/// First-return map T_A and the return time of each class of A (at A's level).
struct InducedMap {
  std::vector<std::pair<Residue, std::int64_t>> return_times;
  Element map;
};

InducedMap induced(const ClopenSet& a);

struct KacReport {
  AdicRational integral;  ///< integral over A of the return time
  AdicRational distance;  ///< d1(id, T_A)
  Element induced_map;
};

/// Both fields equal 1 for every nonempty A; a violation raises logic_error.
KacReport kac_check(const ClopenSet& a);

/// Involution exchanging A and T(A) through T and T^-1. Requires A and T(A)
/// disjoint; throws OverlapError otherwise.
Element generating_involution(const ClopenSet& a);

class OverlapError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// B -> T^a(B) -> T^b(B) -> B; the three sets must be pairwise disjoint.
Element basic_3cycle(const ClopenSet& b, std::int64_t a, std::int64_t c);

/// d1(id, W U W^-1) / d1(id, U).
Rational conjugation_ratio(const Element& u, const Element& conjugator);

/// Unbounded distortion of conjugation by an induced map.
///
/// With A = {0, width+1} mod q^m (just {0} when width = q^m - 1) the return
/// time on the class 0 is width + 1, U swaps the classes 0 and 1, and
/// V = T_A U T_A^-1 swaps the classes 1 and width+1. The ratio
/// d1(id, V) / d1(id, U) equals width.
struct DistortionReport {
  unsigned base = 2;
  unsigned m = 0;
  std::uint64_t width = 0;
  ClopenSet a;
  Element conjugator;  ///< T_A
  Element u;
  Element v;
  AdicRational norm_u;
  AdicRational norm_v;
  Rational ratio;
  Integer linf_v;
};

DistortionReport conj_distortion(unsigned base, unsigned m, std::uint64_t width);

/// T_i = T_{T^{2i}(A)} o T_{T^{2i+1}(A)}^-1 for i < n. Requires
/// A, T(A), ..., T^(2n-1)(A) pairwise disjoint.
std::vector<Element> zn_embedding(unsigned n, const ClopenSet& a);

/// T_1^{m_1} o ... o T_n^{m_n}.
Element zn_word(const std::vector<Element>& generators, const std::vector<std::int64_t>& exponents);

}  // namespace odo
