// Two-generator construction for the odometer's L1 full group: cycles of
// prime order on nested towers, their disjointification, recovery of each
// factor from powers of the product, symbolic checking of construction
// schedules, explicit 3-cycle words, and greedy approximation by generators.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "odo/element.hpp"

namespace odo {

/// rho over the full level-k tower of the cycle (0 1 ... p-1): cocycle +1 on
/// the classes 0..p-2, -(p-1) on class p-1. Requires 2 <= p <= q^k.
Element prime_cycle(unsigned base, std::uint64_t p, unsigned level);

struct Disjointified {
  std::vector<Element> elements;         ///< V_n
  std::vector<Integer> orders;           ///< p_n, the uniform cycle length of U_n
  std::vector<AdicRational> distances;   ///< d1(V_n, U_n)
};

/// supp V_n = supp U_n minus the U_n-saturation of the union of supp U_m,
/// m > n; V_n agrees with U_n there. Each input must be periodic with all
/// nontrivial cycles of one length.
Disjointified disjointify(const std::vector<Element>& cycles);

struct RecoveryRow {
  std::size_t n = 0;
  std::size_t m = 0;
  Integer exponent;          ///< P_m t_m
  AdicRational residual{2};  ///< d1(V^exponent, V_n)
};

struct RecoveryReport {
  Element product;           ///< V = V_0 o V_1 o ...
  std::vector<RecoveryRow> rows;
  Integer crt_exponent;      ///< 1 mod p_n, 0 mod every other p_i
  AdicRational crt_residual{2};
};

/// For m = n+1 .. count: P_m is the product of p_i (i < m, i != n) and t_m in
/// [1, p_n - 1] solves P_m t_m = 1 mod p_n. Supports must be pairwise
/// disjoint and each V_i^{p_i} the identity.
RecoveryReport assemble_and_recover(const std::vector<Element>& vs, const std::vector<Integer>& orders,
                                    std::size_t n);
/// Orders taken from the elements themselves.
RecoveryReport assemble_and_recover(const std::vector<Element>& vs, std::size_t n);

struct GeneratorReport {
  std::vector<Integer> primes;
  std::vector<unsigned> levels;
  std::vector<Element> u;
  std::vector<Element> v;
  std::vector<AdicRational> disjointify_distances;
  Element product;
  std::vector<RecoveryRow> recovery;  ///< all targets n, rows in (n, m) order
};

/// U_n = prime_cycle(p_n, k_n), disjointified, multiplied, and every V_n
/// recovered from powers of the product.
GeneratorReport build_generators(unsigned base, const std::vector<std::uint64_t>& primes,
                                 const std::vector<unsigned>& levels);

struct ConstructionSchedule {
  unsigned base = 2;
  std::vector<Integer> primes;  ///< p_n
  std::vector<Integer> levels;  ///< k_n
  std::vector<std::optional<Rational>> deltas;
  std::vector<std::optional<Rational>> epsilons;
};

/// First `count` primes with k_n = 4^(n 2^n + 2^n).
ConstructionSchedule paper_schedule(std::size_t count, unsigned base = 2);

struct ScheduleCheck {
  std::size_t index = 0;
  std::string condition;
  bool passed = false;
  bool exact = true;  ///< false when an upper bound replaced an exact value
  std::string detail;
};

struct ScheduleReport {
  std::vector<ScheduleCheck> checks;
  bool all_passed() const;
  const ScheduleCheck* find(std::size_t index, const std::string& condition) const;
};

/// Condition names: "prime", "prime-bound", "levels-increasing", "growth"
/// (k_n >= 4^(n 2^n + 2^n)), "delta" (p_m sum_{k=m+1}^{n} mu(supp U_k) <
/// delta_m), "epsilon", "product" (inequality with mu_i = p_i / q^k_i) and
/// "product-count" (the same with p_i / k_i). Both product checks include a
/// tail bound 2^(1 - (2M+1) 2^M) for indices >= M that assumes the schedule
/// continues with p_i <= 2^(2^i) and k_i >= 4^(i 2^i + 2^i).
ScheduleReport check_schedule(const ConstructionSchedule& s, std::size_t count);

enum class Letter { T, TInv, U, UInv };
using Word = std::vector<Letter>;

std::string to_string(const Word& w);
/// Product of the letters, leftmost letter applied last.
Element evaluate(const Word& w, const Element& t, const Element& u);

/// Word in T and U = rho((0 1 ... n-1)) on a tower of height N that equals the
/// 3-cycle (i i+1 i+2). Requires 3 <= n <= N - 2 and i <= N - 3. The length is
/// 2i + 12 <= 20 N.
Word word_for_3cycle(std::uint64_t i, std::uint64_t n, std::uint64_t tower_height);

/// rho over the full level-k tower of the 3-cycle (i i+1 i+2).
Element tower_3cycle(unsigned base, unsigned level, std::uint64_t i);

struct Approximation {
  std::vector<std::size_t> word;  ///< generator indices; product left to right
  Element achieved;
  AdicRational residual{2};        ///< d1(achieved, target)
  std::vector<AdicRational> history;
  Integer index_gap;              ///< |index(target) - index(achieved)|, a lower bound on residual
};

/// Greedy word search: each step multiplies the current product on the left or
/// right by one generator, choosing the largest exact d1 decrease (ties: lower
/// generator index, then left before right). Stops when no move decreases the
/// residual or the budget is spent.
Approximation greedy_approximate(const Element& target, const std::vector<Element>& generators,
                                 std::size_t budget);

/// All distinct I_{T,A} for nonempty clopen A with A and T(A) disjoint and
/// canonical level <= max_level, ordered by level then by class bitmask.
std::vector<Element> all_generating_involutions(unsigned base, unsigned max_level);

}  // namespace odo
