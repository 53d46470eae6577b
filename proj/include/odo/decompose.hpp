// Structural decompositions of full-group elements: the sign split of
// sigma-cycles, periodicity, cocycle entropy, the three-set support
// partition, involution triples and equal-norm splitting of periodic
// elements.
#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "odo/element.hpp"

namespace odo {

/// U = negative o periodic o positive on pairwise-disjoint invariant supports.
/// Every sigma-cycle of `positive` has positive cocycle sum (the element
/// drifts forward along T-orbits), of `negative` a negative sum, of
/// `periodic` a zero sum.
struct BelinskayaSplit {
  Element negative;
  Element periodic;
  Element positive;
  ClopenSet negative_support;
  ClopenSet periodic_support;
  ClopenSet positive_support;
};

BelinskayaSplit belinskaya_decompose(const Element& u);

struct Periodicity {
  std::optional<Integer> order;  ///< set iff periodic
  std::vector<Residue> witness;  ///< a cycle with nonzero sum otherwise
  std::int64_t witness_sum = 0;
  unsigned level = 0;

  bool periodic() const { return order.has_value(); }
};

Periodicity periodicity(const Element& u);
/// Order of a periodic element; throws NotPeriodic.
Integer order(const Element& u);

/// Shannon entropy (natural log) of the distribution of cocycle values.
double cocycle_entropy(const Element& u);

/// Smallest level >= level(U) at which no residue of the support is a fixed
/// point of sigma.
unsigned separating_level(const Element& u);

/// Partition of supp U into three sets A_i with U(A_i) disjoint from A_i.
struct ThreeColoring {
  std::array<ClopenSet, 3> parts;
  unsigned level = 0;  ///< level at which the greedy coloring ran
};

ThreeColoring disjoint_support_3coloring(const Element& u);

/// Involutions U1, U2, U3 and the partition (A1, A2, B1, B2, B3) of supp U
/// with U(A1) = A2, U(B1) = B2, U(B2) = B3. U agrees with U1 on A1+B1, with
/// U2 on B2 and with U3 on A2+B3.
struct InvolutionTriple {
  Element u1, u2, u3;
  ClopenSet a1, a2, b1, b2, b3;
};

InvolutionTriple involution_triple_decompose(const Element& u);

/// Element equal to each piece's element on the piece's set, identity off
/// their union. Sets must be pairwise disjoint; the result must be bijective.
Element patchwork(const std::vector<std::pair<Element, ClopenSet>>& pieces);

/// U = parts[0] o ... o parts[N-1] with disjoint U-invariant supports.
struct EqualNormSplit {
  std::vector<Element> parts;
  unsigned depth = 0;               ///< level of the orbit blocks
  std::size_t blocks = 0;           ///< number of invariant orbit blocks
  Integer max_block_weight;         ///< max over blocks of sum |n_w| at `depth`
  AdicRational tolerance{2};        ///< max_block_weight / q^depth
  bool exact = false;               ///< all parts have norm exactly d1(id, U)/N
};

EqualNormSplit split_equal_norm(const Element& u, unsigned parts, unsigned depth);

}  // namespace odo
