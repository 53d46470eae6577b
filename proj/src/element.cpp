#include "odo/element.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace odo {

namespace {

Integer from_int128(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 m = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
  Integer r = (hi << 64) + lo;
  return negative ? Integer(-r) : r;
}

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

// Coarsest level at which the values are still a function of w mod q^level.
unsigned canonical_level(unsigned base, unsigned level, std::vector<std::int64_t>& values) {
  while (level > 0) {
    const std::size_t coarse = values.size() / base;
    bool periodic = true;
    for (std::size_t w = coarse; w < values.size() && periodic; ++w)
      periodic = values[w] == values[w % coarse];
    if (!periodic) break;
    values.resize(coarse);
    --level;
  }
  return level;
}

}  // namespace

NotBijective::NotBijective(Residue a, Residue b, Residue img)
    : ValidationError("cocycle is not bijective: residues " + std::to_string(a) + " and " +
                      std::to_string(b) + " both map to " + std::to_string(img)),
      first(a),
      second(b),
      image(img) {}

NotPeriodic::NotPeriodic(std::vector<Residue> w, std::int64_t s, unsigned k)
    : Error("element is not periodic: sigma-cycle through residue " +
            (w.empty() ? std::string("?") : std::to_string(w.front())) + " at level " +
            std::to_string(k) + " has cocycle sum " + std::to_string(s)),
      witness(std::move(w)),
      sum(s),
      level(k) {}

Element::Element(unsigned base) : base_(base), values_{0} { check_base(base); }

Element Element::odometer(unsigned base, std::int64_t n) {
  Element e(base);
  e.values_[0] = n;
  return e;
}

Residue Element::image(Residue w) const {
  const Residue size = values_.size();
  return add_residue(w, mod_residue(values_[w], size), size);
}

Element Element::from_cocycle(unsigned base, unsigned level, std::vector<std::int64_t> values) {
  const Residue n = residue_count(base, level);
  if (values.size() != n)
    throw ValidationError("cocycle has " + std::to_string(values.size()) + " values, level " +
                          std::to_string(level) + " needs " + std::to_string(n));
  constexpr Residue kUnset = ~Residue{0};
  std::vector<Residue> preimage(n, kUnset);
  Residue total = 0;
  for (Residue w = 0; w < n; ++w) {
    const Residue shift = mod_residue(values[w], n);
    const Residue img = add_residue(w, shift, n);
    if (preimage[img] != kUnset) throw NotBijective(preimage[img], w, img);
    preimage[img] = w;
    total = add_residue(total, shift, n);
  }
  if (total != 0) throw ValidationError("cocycle sum is not divisible by q^k");

  Element e(base);
  e.level_ = canonical_level(base, level, values);
  e.values_ = std::move(values);
  return e;
}

CocycleTable refine(const Element& u, unsigned level) {
  if (level < u.level())
    throw ValidationError("cannot refine to level " + std::to_string(level) + " below level " +
                          std::to_string(u.level()));
  const Residue n = residue_count(u.base(), level);
  CocycleTable t{u.base(), level, std::vector<std::int64_t>(n)};
  const Residue period = u.residues();
  for (Residue w = 0; w < n; w += period) std::copy_n(u.cocycle().begin(), period, t.values.begin() + w);
  return t;
}

std::vector<Residue> permutation_of(const CocycleTable& table) {
  const Residue n = table.values.size();
  std::vector<Residue> sigma(n);
  for (Residue w = 0; w < n; ++w) sigma[w] = add_residue(w, mod_residue(table.values[w], n), n);
  return sigma;
}

Element compose(const Element& u, const Element& v) {
  require_same_base(u.base(), v.base());
  const unsigned level = std::max(u.level(), v.level());
  CocycleTable t = refine(v, level);
  const Residue n = t.values.size();
  for (Residue w = 0; w < n; ++w) {
    const Residue moved = add_residue(w, mod_residue(t.values[w], n), n);
    t.values[w] = checked_add(t.values[w], u.value(moved));
  }
  return Element::from_cocycle(std::move(t));
}

Element inverse(const Element& u) {
  const Residue n = u.residues();
  std::vector<std::int64_t> values(n);
  for (Residue w = 0; w < n; ++w) values[u.image(w)] = checked_sub(0, u.value(w));
  return Element::from_cocycle(u.base(), u.level(), std::move(values));
}

Element power(const Element& u, const Integer& e) {
  if (e < 0) return power(inverse(u), Integer(-e));
  const auto table = refine(u, u.level());
  std::vector<std::int64_t> values(table.values.size(), 0);
  for (const auto& cyc : cycles(table)) {
    const std::size_t len = cyc.residues.size();
    // prefix[j] = displacement after j steps from residues[0]
    std::vector<std::int64_t> prefix(2 * len + 1, 0);
    for (std::size_t j = 0; j < 2 * len; ++j)
      prefix[j + 1] = checked_add(prefix[j], table.values[cyc.residues[j % len]]);
    const Integer laps = e / static_cast<unsigned long>(len);
    const std::size_t rem = Integer(e % static_cast<unsigned long>(len)).get_ui();
    std::int64_t lap_shift = 0;
    if (cyc.sum != 0) lap_shift = to_int64(laps * static_cast<long>(cyc.sum));
    for (std::size_t j = 0; j < len; ++j)
      values[cyc.residues[j]] = checked_add(lap_shift, checked_sub(prefix[j + rem], prefix[j]));
  }
  return Element::from_cocycle(u.base(), u.level(), std::move(values));
}

Element commutator(const Element& u, const Element& v) {
  return compose(compose(u, v), compose(inverse(u), inverse(v)));
}

Integer index(const Element& u) {
  __int128 total = 0;
  for (auto n : u.cocycle()) total += n;
  Integer sum = from_int128(total);
  const Integer q_k = power_of(u.base(), u.level());
  if (mpz_divisible_p(sum.get_mpz_t(), q_k.get_mpz_t()) == 0)
    throw std::logic_error("index is not an integer; element invariant broken");
  Integer r;
  mpz_divexact(r.get_mpz_t(), sum.get_mpz_t(), q_k.get_mpz_t());
  return r;
}

ClopenSet support(const Element& u) {
  std::vector<Residue> classes;
  for (Residue w = 0; w < u.residues(); ++w)
    if (u.value(w) != 0) classes.push_back(w);
  return ClopenSet::from_classes(u.base(), u.level(), std::move(classes));
}

ClopenSet image(const Element& u, const ClopenSet& s) {
  require_same_base(u.base(), s.base());
  const unsigned level = std::max(u.level(), s.level());
  const auto sigma = permutation_of(refine(u, level));
  std::vector<Residue> out;
  for (Residue w : s.classes_at(level)) out.push_back(sigma[w]);
  return ClopenSet::from_classes(u.base(), level, std::move(out));
}

Element restrict_to(const Element& u, const ClopenSet& s) {
  if (!(image(u, s) == s)) throw ValidationError("restriction set is not invariant under the element");
  const unsigned level = std::max(u.level(), s.level());
  auto t = refine(u, level);
  const auto inside = s.indicator(level);
  for (Residue w = 0; w < t.values.size(); ++w)
    if (!inside[w]) t.values[w] = 0;
  return Element::from_cocycle(std::move(t));
}

namespace {

template <typename F>
void for_each_pair(const Element& u, const Element& v, F&& f) {
  require_same_base(u.base(), v.base());
  const unsigned level = std::max(u.level(), v.level());
  const Residue n = residue_count(u.base(), level);
  for (Residue w = 0; w < n; ++w) f(u.value(w), v.value(w));
}

unsigned common_level(const Element& u, const Element& v) { return std::max(u.level(), v.level()); }

}  // namespace

AdicRational d1(const Element& u, const Element& v) {
  __int128 total = 0;
  for_each_pair(u, v, [&](std::int64_t a, std::int64_t b) {
    total += abs128(static_cast<__int128>(a) - b);
  });
  return AdicRational(u.base(), from_int128(total), common_level(u, v));
}

AdicRational du(const Element& u, const Element& v) {
  unsigned long count = 0;
  for_each_pair(u, v, [&](std::int64_t a, std::int64_t b) { count += a != b; });
  return AdicRational(u.base(), Integer(count), common_level(u, v));
}

Integer linf(const Element& u, const Element& v) {
  __int128 best = 0;
  for_each_pair(u, v, [&](std::int64_t a, std::int64_t b) {
    best = std::max(best, abs128(static_cast<__int128>(a) - b));
  });
  return from_int128(best);
}

double dp(const Element& u, const Element& v, double p) {
  if (!(p >= 1.0)) throw ValidationError("dp requires p >= 1");
  std::vector<double> magnitudes;
  for_each_pair(u, v, [&](std::int64_t a, std::int64_t b) {
    if (a != b) magnitudes.push_back(static_cast<double>(abs128(static_cast<__int128>(a) - b)));
  });
  std::sort(magnitudes.begin(), magnitudes.end());
  const double cells = static_cast<double>(residue_count(u.base(), common_level(u, v)));
  double total = 0.0;
  for (double m : magnitudes) total += std::pow(m, p) / cells;
  return std::pow(total, 1.0 / p);
}

MetricValue metric(const Element& u, const Element& v, MetricKind kind, double p) {
  switch (kind) {
    case MetricKind::D1:
      return d1(u, v);
    case MetricKind::Du:
      return du(u, v);
    case MetricKind::Linf:
      return linf(u, v);
    case MetricKind::Dp:
      return dp(u, v, p);
  }
  throw ValidationError("unknown metric kind");
}

std::vector<Cycle> cycles(const CocycleTable& table) {
  const auto sigma = permutation_of(table);
  std::vector<char> seen(sigma.size(), 0);
  std::vector<Cycle> out;
  for (Residue start = 0; start < sigma.size(); ++start) {
    if (seen[start]) continue;
    Cycle c;
    Residue w = start;
    do {
      seen[w] = 1;
      c.residues.push_back(w);
      c.sum = checked_add(c.sum, table.values[w]);
      w = sigma[w];
    } while (w != start);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace odo
