#include "odo/genlab.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "odo/decompose.hpp"
#include "odo/permutation.hpp"
#include "odo/towers.hpp"

namespace odo {

Element prime_cycle(unsigned base, std::uint64_t p, unsigned level) {
  const Residue n = residue_count(base, level);
  if (p < 2 || p > n)
    throw ValidationError("cycle length " + std::to_string(p) + " must lie in [2, q^k = " + std::to_string(n) +
                          "]");
  std::vector<std::int64_t> values(n, 0);
  for (std::uint64_t i = 0; i + 1 < p; ++i) values[i] = 1;
  values[p - 1] = -static_cast<std::int64_t>(p - 1);
  return Element::from_cocycle(base, level, std::move(values));
}

namespace {

// Length shared by all nontrivial cycles of a periodic element (1 for the
// identity).
Integer uniform_cycle_length(const Element& u) {
  std::size_t length = 1;
  for (const auto& c : cycles(u)) {
    if (c.sum != 0) throw NotPeriodic(c.residues, c.sum, u.level());
    if (c.residues.size() < 2) continue;
    if (length != 1 && length != c.residues.size())
      throw ValidationError("element is not a p-cycle: cycle lengths " + std::to_string(length) + " and " +
                            std::to_string(c.residues.size()));
    length = c.residues.size();
  }
  return Integer(static_cast<unsigned long>(length));
}

}  // namespace

Disjointified disjointify(const std::vector<Element>& us) {
  Disjointified out;
  if (us.empty()) return out;
  const unsigned base = us.front().base();
  for (const auto& u : us) {
    require_same_base(base, u.base());
    out.orders.push_back(uniform_cycle_length(u));
  }
  out.elements.resize(us.size(), Element(base));
  out.distances.resize(us.size(), AdicRational(base));

  ClopenSet later(base);  // union of supp U_m for m > n
  for (std::size_t k = us.size(); k-- > 0;) {
    const Element& u = us[k];
    const unsigned level = std::max(u.level(), later.level());
    auto table = refine(u, level);
    const auto blocked = later.indicator(level);
    for (const auto& c : cycles(table)) {
      const bool hit = std::any_of(c.residues.begin(), c.residues.end(), [&](Residue w) { return blocked[w] != 0; });
      if (hit)
        for (Residue w : c.residues) table.values[w] = 0;
    }
    out.elements[k] = Element::from_cocycle(std::move(table));
    out.distances[k] = d1(out.elements[k], u);
    later = unite(later, support(u));
  }
  return out;
}

namespace {

void require_disjoint_supports(const std::vector<Element>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!disjoint(support(vs[i]), support(vs[j])))
        throw ValidationError("supports of elements " + std::to_string(i) + " and " + std::to_string(j) +
                              " overlap");
}

// t in [1, p-1] with a t = 1 mod p; 1 when p = 1.
Integer inverse_mod(const Integer& a, const Integer& p) {
  if (p == 1) return 1;
  Integer t;
  if (mpz_invert(t.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    throw ValidationError("orders are not coprime; " + a.get_str() + " has no inverse mod " + p.get_str());
  return t;
}

}  // namespace

RecoveryReport assemble_and_recover(const std::vector<Element>& vs, const std::vector<Integer>& orders,
                                    std::size_t n) {
  if (vs.empty()) throw ValidationError("recovery needs at least one element");
  if (orders.size() != vs.size()) throw ValidationError("one order per element is required");
  if (n >= vs.size()) throw ValidationError("target index out of range");
  require_disjoint_supports(vs);
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (!power(vs[i], orders[i]).is_identity())
      throw ValidationError("element " + std::to_string(i) + " does not have order dividing " +
                            orders[i].get_str());

  RecoveryReport r{Element(vs.front().base()), {}, 0, AdicRational(vs.front().base())};
  for (const auto& v : vs) r.product = compose(r.product, v);

  const Integer& pn = orders[n];
  Integer partial = 1;  // P_m
  for (std::size_t m = n + 1; m <= vs.size(); ++m) {
    partial = 1;
    for (std::size_t i = 0; i < m; ++i)
      if (i != n) partial *= orders[i];
    const Integer exponent = partial * inverse_mod(partial % pn, pn);
    r.rows.push_back({n, m, exponent, d1(power(r.product, exponent), vs[n])});
  }
  r.crt_exponent = r.rows.back().exponent;
  r.crt_residual = r.rows.back().residual;
  return r;
}

RecoveryReport assemble_and_recover(const std::vector<Element>& vs, std::size_t n) {
  std::vector<Integer> orders;
  for (const auto& v : vs) orders.push_back(order(v));
  return assemble_and_recover(vs, orders, n);
}

GeneratorReport build_generators(unsigned base, const std::vector<std::uint64_t>& primes,
                                 const std::vector<unsigned>& levels) {
  if (primes.size() != levels.size()) throw ValidationError("one level per prime is required");
  if (primes.empty()) throw ValidationError("construction needs at least one prime");
  GeneratorReport g;
  g.levels = levels;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    g.primes.emplace_back(static_cast<unsigned long>(primes[i]));
    g.u.push_back(prime_cycle(base, primes[i], levels[i]));
  }
  auto dj = disjointify(g.u);
  g.v = dj.elements;
  g.disjointify_distances = dj.distances;
  for (std::size_t n = 0; n < g.v.size(); ++n) {
    auto rec = assemble_and_recover(g.v, g.primes, n);
    if (n == 0) g.product = rec.product;
    g.recovery.insert(g.recovery.end(), rec.rows.begin(), rec.rows.end());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Schedule checking

ConstructionSchedule paper_schedule(std::size_t count, unsigned base) {
  if (count > 16) throw ResourceError("standard schedule is limited to 16 indices");
  ConstructionSchedule s;
  s.base = base;
  Integer p = 1;
  for (std::size_t n = 0; n < count; ++n) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    s.primes.push_back(p);
    const unsigned long exponent = 2 * ((n << n) + (1ul << n));  // 4^(n 2^n + 2^n)
    Integer k;
    mpz_ui_pow_ui(k.get_mpz_t(), 2, exponent);
    s.levels.push_back(k);
  }
  s.deltas.assign(count, std::nullopt);
  s.epsilons.assign(count, std::nullopt);
  return s;
}

bool ScheduleReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ScheduleCheck& c) { return c.passed; });
}

const ScheduleCheck* ScheduleReport::find(std::size_t index, const std::string& condition) const {
  for (const auto& c : checks)
    if (c.index == index && c.condition == condition) return &c;
  return nullptr;
}

namespace {

constexpr unsigned long kMaxMaterializedBits = 1ul << 26;

// Sum of fractions kept as an unreduced num/den pair.
struct Fraction {
  Integer num = 0;
  Integer den = 1;

  void add(const Integer& p, const Integer& d) {
    if (d == den) {
      num += p;
      return;
    }
    num = num * d + p * den;
    den *= d;
  }
};

// Upper bound for mu_i = p_i / q^k_i as numerator and denominator. Exact when
// q^k_i is small enough to materialize; otherwise p_i / k_i, valid since
// q^k > k.
struct Term {
  Integer numerator;
  Integer denominator;
  bool exact = true;
};

Term measure_term(unsigned base, const Integer& prime, const Integer& level) {
  const unsigned long bits_per_digit = mpz_sizeinbase(Integer(base).get_mpz_t(), 2);
  if (level.fits_ulong_p() && level.get_ui() <= kMaxMaterializedBits / bits_per_digit)
    return {prime, power_of(base, static_cast<unsigned>(level.get_ui())), true};
  return {prime, level, false};
}

bool at_most_power_of_two(const Integer& value, unsigned long exponent) {
  // value <= 2^exponent
  if (value <= 0) return true;
  const std::size_t bits = mpz_sizeinbase(value.get_mpz_t(), 2);
  if (bits <= exponent) return true;
  return bits == exponent + 1 && mpz_popcount(value.get_mpz_t()) == 1;
}

std::string fraction_detail(const Integer& lhs_num, const Integer& lhs_den, const std::string& rhs) {
  const auto nb = mpz_sizeinbase(lhs_num.get_mpz_t(), 2);
  const auto db = mpz_sizeinbase(lhs_den.get_mpz_t(), 2);
  return "lhs = " + std::to_string(nb) + "-bit / " + std::to_string(db) + "-bit integers, rhs = " + rhs;
}

}  // namespace

ScheduleReport check_schedule(const ConstructionSchedule& s, std::size_t count) {
  ScheduleReport report;
  if (count == 0) return report;
  if (count > s.primes.size() || count > s.levels.size())
    throw ValidationError("schedule has fewer than " + std::to_string(count) + " entries");
  if (count > 16) throw ResourceError("schedule checks are limited to 16 indices");
  check_base(s.base);

  auto delta = [&](std::size_t i) -> std::optional<Rational> {
    return i < s.deltas.size() ? s.deltas[i] : std::nullopt;
  };
  auto epsilon = [&](std::size_t i) -> std::optional<Rational> {
    return i < s.epsilons.size() ? s.epsilons[i] : std::nullopt;
  };

  std::vector<Term> mu;
  std::vector<Term> by_count;
  for (std::size_t i = 0; i < count; ++i) {
    mu.push_back(measure_term(s.base, s.primes[i], s.levels[i]));
    by_count.push_back({s.primes[i], s.levels[i], true});
  }
  // 2^(1 - (2M+1) 2^M) bounds both tails.
  const unsigned long tail_exponent = (2 * count + 1) * (1ul << count) - 1;
  Integer tail_den;
  mpz_ui_pow_ui(tail_den.get_mpz_t(), 2, tail_exponent);

  for (std::size_t n = 0; n < count; ++n) {
    const Integer& p = s.primes[n];
    const Integer& k = s.levels[n];

    const bool increasing_p = n == 0 || p > s.primes[n - 1];
    const bool is_prime = mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
    report.checks.push_back({n, "prime", is_prime && increasing_p, true,
                             "p = " + p.get_str() + (increasing_p ? "" : " (not increasing)")});

    const unsigned long two_n = n < 63 ? (1ul << n) : ~0ul;
    report.checks.push_back({n, "prime-bound", at_most_power_of_two(p, two_n), true,
                             "p <= 2^(2^" + std::to_string(n) + ")"});

    const bool increasing_k = k > 0 && (n == 0 || k > s.levels[n - 1]);
    report.checks.push_back({n, "levels-increasing", increasing_k, true, "k = " + k.get_str()});

    // k >= 4^(n 2^n + 2^n) = 2^e
    const unsigned long e = 2 * ((static_cast<unsigned long>(n) << n) + (1ul << n));
    const bool growth = k > 0 && mpz_sizeinbase(k.get_mpz_t(), 2) >= e + 1;
    report.checks.push_back({n, "growth", growth, true, "k >= 2^" + std::to_string(e)});

    if (auto d = delta(n)) {
      // p_m * sum_{k=m+1}^{M-1} mu_k < delta_m
      Fraction sum;
      bool exact = true;
      for (std::size_t i = n + 1; i < count; ++i) {
        sum.add(mu[i].numerator, mu[i].denominator);
        exact = exact && mu[i].exact;
      }
      const bool ok = *d > 0 && p * sum.num * d->get_den() < d->get_num() * sum.den;
      report.checks.push_back({n, "delta", ok, exact,
                               ok || exact ? "delta = " + to_string(*d)
                                           : "inconclusive: upper bound exceeds delta = " + to_string(*d)});
    } else {
      report.checks.push_back({n, "delta", true, true, "skipped: no delta given"});
    }

    if (auto eps = epsilon(n)) {
      report.checks.push_back({n, "epsilon", *eps > 0, true, "epsilon = " + to_string(*eps)});
    }

    Integer prefix = 1;
    for (std::size_t i = 0; i < n; ++i) prefix *= s.primes[i];
    const unsigned long rhs_exponent = static_cast<unsigned long>(n) << n;  // 2^(-n 2^n)
    for (int variant = 0; variant < 2; ++variant) {
      const auto& terms = variant == 0 ? mu : by_count;
      Fraction sum;
      bool exact = true;
      for (std::size_t i = n; i < count; ++i) {
        sum.add(terms[i].numerator, terms[i].denominator);
        exact = exact && terms[i].exact;
      }
      sum.add(1, tail_den);
      // prefix * num / den <= 2^-rhs  <=>  prefix * num * 2^rhs <= den
      Integer lhs = prefix * sum.num;
      mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), rhs_exponent);
      const bool ok = lhs <= sum.den;
      report.checks.push_back({n, variant == 0 ? "product" : "product-count", ok, exact,
                               fraction_detail(prefix * sum.num, sum.den,
                                               "2^-" + std::to_string(rhs_exponent))});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Words

namespace {

Letter inverse_letter(Letter l) {
  switch (l) {
    case Letter::T:
      return Letter::TInv;
    case Letter::TInv:
      return Letter::T;
    case Letter::U:
      return Letter::UInv;
    case Letter::UInv:
      return Letter::U;
  }
  return l;
}

void append(Word& w, Letter l, std::uint64_t times = 1) {
  for (std::uint64_t i = 0; i < times; ++i) {
    if (!w.empty() && w.back() == inverse_letter(l))
      w.pop_back();
    else
      w.push_back(l);
  }
}

void append(Word& w, const Word& tail) {
  for (Letter l : tail) append(w, l);
}

}  // namespace

std::string to_string(const Word& w) {
  std::string out;
  for (Letter l : w) {
    if (!out.empty()) out += ' ';
    switch (l) {
      case Letter::T:
        out += "T";
        break;
      case Letter::TInv:
        out += "T^-1";
        break;
      case Letter::U:
        out += "U";
        break;
      case Letter::UInv:
        out += "U^-1";
        break;
    }
  }
  return out;
}

Element evaluate(const Word& w, const Element& t, const Element& u) {
  require_same_base(t.base(), u.base());
  const Element t_inv = inverse(t);
  const Element u_inv = inverse(u);
  Element acc(t.base());
  for (Letter l : w) {
    switch (l) {
      case Letter::T:
        acc = compose(acc, t);
        break;
      case Letter::TInv:
        acc = compose(acc, t_inv);
        break;
      case Letter::U:
        acc = compose(acc, u);
        break;
      case Letter::UInv:
        acc = compose(acc, u_inv);
        break;
    }
  }
  return acc;
}

Word word_for_3cycle(std::uint64_t i, std::uint64_t n, std::uint64_t tower_height) {
  if (n < 3 || tower_height < 2 || n > tower_height - 2)
    throw ValidationError("window n must satisfy 3 <= n <= N - 2");
  if (i > tower_height - 3) throw ValidationError("3-cycle start i must satisfy i <= N - 3");

  // c0 = U = (0 1 ... n-1) and c1 = T U T^-1 = (1 2 ... n). Then
  // c1^-1 c0 = (0 n n-1), its square is (0 n-1 n), and conjugating by c1^2
  // gives (0 1 2).
  const Word c1{Letter::T, Letter::U, Letter::TInv};
  const Word c1_inv{Letter::T, Letter::UInv, Letter::TInv};
  Word c1_inv_c0 = c1_inv;
  append(c1_inv_c0, Letter::U);

  Word w;
  append(w, Letter::T, i);
  append(w, c1);
  append(w, c1);
  append(w, c1_inv_c0);
  append(w, c1_inv_c0);
  append(w, c1_inv);
  append(w, c1_inv);
  append(w, Letter::TInv, i);
  return w;
}

Element tower_3cycle(unsigned base, unsigned level, std::uint64_t i) {
  const auto tower = rokhlin_tower(ClopenSet::cylinder(base, level, 0));
  if (i + 2 >= tower.height) throw ValidationError("3-cycle does not fit in the tower");
  const auto a = static_cast<std::uint32_t>(i);
  const std::array<std::uint32_t, 3> points{a, a + 1, a + 2};
  return rho_embed(tower, Permutation::cycle(tower.height, points));
}

// ---------------------------------------------------------------------------
// Greedy approximation

Approximation greedy_approximate(const Element& target, const std::vector<Element>& generators,
                                 std::size_t budget) {
  for (const auto& g : generators) require_same_base(target.base(), g.base());
  Approximation a{{}, Element(target.base()), AdicRational(target.base()), {}, 0};
  a.residual = d1(a.achieved, target);
  a.history.push_back(a.residual);
  std::vector<std::size_t> left_part;  // indices prepended, in reverse order
  std::vector<std::size_t> right_part;

  for (std::size_t step = 0; step < budget && !a.residual.is_zero(); ++step) {
    std::optional<std::pair<std::size_t, bool>> best;  // (generator, on_left)
    AdicRational best_residual = a.residual;
    Element best_element = a.achieved;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      for (bool on_left : {true, false}) {
        Element candidate = on_left ? compose(generators[g], a.achieved) : compose(a.achieved, generators[g]);
        AdicRational r = d1(candidate, target);
        if (r < best_residual) {
          best_residual = r;
          best_element = std::move(candidate);
          best = std::make_pair(g, on_left);
        }
      }
    }
    if (!best) break;
    (best->second ? left_part : right_part).push_back(best->first);
    a.achieved = std::move(best_element);
    a.residual = best_residual;
    a.history.push_back(a.residual);
  }
  a.word.assign(left_part.rbegin(), left_part.rend());
  a.word.insert(a.word.end(), right_part.begin(), right_part.end());
  a.index_gap = abs(Integer(index(target) - index(a.achieved)));
  return a;
}

std::vector<Element> all_generating_involutions(unsigned base, unsigned max_level) {
  std::vector<Element> out;
  std::set<std::vector<std::int64_t>> seen;
  for (unsigned level = 0; level <= max_level; ++level) {
    const Residue n = residue_count(base, level);
    if (n > 16) throw ResourceError("generating involutions are enumerated only up to 16 classes");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<Residue> classes;
      for (Residue w = 0; w < n; ++w)
        if (mask >> w & 1u) classes.push_back(w);
      const auto a = ClopenSet::from_classes(base, level, std::move(classes));
      if (a.level() != level) continue;
      if (!disjoint(a, translate(a, 1))) continue;
      Element e = generating_involution(a);
      std::vector<std::int64_t> key(e.cocycle().begin(), e.cocycle().end());
      key.push_back(e.level());
      if (seen.insert(std::move(key)).second) out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace odo
