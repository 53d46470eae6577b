#include "odo/towers.hpp"

#include <algorithm>
#include <stdexcept>

namespace odo {

std::uint64_t tower_height(const ClopenSet& a) {
  if (a.is_empty()) throw ValidationError("tower base must be nonempty");
  const Residue n = residue_count(a.base(), a.level());
  const auto c = a.classes();
  Residue gap = c.front() + n - c.back();  // wraparound gap, n for a single class
  for (std::size_t i = 1; i < c.size(); ++i) gap = std::min(gap, c[i] - c[i - 1]);
  return gap;
}

TowerSpec rokhlin_tower(const ClopenSet& a) {
  TowerSpec t{a, tower_height(a), {}, ClopenSet(a.base())};
  const Residue n = residue_count(a.base(), a.level());
  std::vector<Residue> covered;
  t.levels.reserve(t.height);
  for (std::uint64_t i = 0; i < t.height; ++i) {
    t.levels.push_back(translate(a, static_cast<std::int64_t>(i)));
    for (Residue c : a.classes()) covered.push_back((c + i) % n);
  }
  t.covered = ClopenSet::from_classes(a.base(), a.level(), std::move(covered));
  return t;
}

Element rho_embed(const TowerSpec& tower, const Permutation& s) {
  if (s.size() != tower.height)
    throw ValidationError("permutation size " + std::to_string(s.size()) + " does not match tower height " +
                          std::to_string(tower.height));
  const ClopenSet& a = tower.base_set;
  const Residue n = residue_count(a.base(), a.level());
  std::vector<std::int64_t> values(n, 0);
  for (std::uint64_t i = 0; i < tower.height; ++i) {
    const std::int64_t shift = static_cast<std::int64_t>(s(i)) - static_cast<std::int64_t>(i);
    for (Residue c : a.classes()) values[(c + i) % n] = shift;
  }
  return Element::from_cocycle(a.base(), a.level(), std::move(values));
}

InducedMap induced(const ClopenSet& a) {
  if (a.is_empty()) throw ValidationError("induced map needs a nonempty set");
  const Residue n = residue_count(a.base(), a.level());
  const auto c = a.classes();
  InducedMap out{{}, Element(a.base())};
  std::vector<std::int64_t> values(n, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Residue next = i + 1 < c.size() ? c[i + 1] : c.front() + n;
    const auto gap = static_cast<std::int64_t>(next - c[i]);
    values[c[i]] = gap;
    out.return_times.emplace_back(c[i], gap);
  }
  out.map = Element::from_cocycle(a.base(), a.level(), std::move(values));
  return out;
}

KacReport kac_check(const ClopenSet& a) {
  auto ind = induced(a);
  Integer total = 0;
  for (const auto& [w, t] : ind.return_times) total += static_cast<long>(t);
  KacReport r{AdicRational(a.base(), total, a.level()), norm1(ind.map), std::move(ind.map)};
  const AdicRational one = AdicRational::from_integer(a.base(), 1);
  if (r.integral != one || r.distance != one)
    throw std::logic_error("Kac identity violated for a clopen set; return times are inconsistent");
  return r;
}

Element generating_involution(const ClopenSet& a) {
  const ClopenSet shifted = translate(a, 1);
  if (!disjoint(a, shifted)) throw OverlapError("generating involution needs A and T(A) disjoint");
  if (a.is_empty()) return Element(a.base());
  const Residue n = residue_count(a.base(), a.level());
  std::vector<std::int64_t> values(n, 0);
  for (Residue c : a.classes()) {
    values[c] = 1;
    values[(c + 1) % n] = -1;
  }
  return Element::from_cocycle(a.base(), a.level(), std::move(values));
}

Element basic_3cycle(const ClopenSet& b, std::int64_t a, std::int64_t c) {
  if (b.is_empty()) throw ValidationError("basic 3-cycle needs a nonempty base set");
  const ClopenSet second = translate(b, a);
  const ClopenSet third = translate(b, c);
  if (!disjoint(b, second) || !disjoint(b, third) || !disjoint(second, third))
    throw OverlapError("basic 3-cycle needs B, T^a(B), T^b(B) pairwise disjoint");
  const Residue n = residue_count(b.base(), b.level());
  std::vector<std::int64_t> values(n, 0);
  for (Residue w : b.classes()) {
    values[w] = a;
    values[(w + mod_residue(a, n)) % n] = checked_sub(c, a);
    values[(w + mod_residue(c, n)) % n] = checked_sub(0, c);
  }
  return Element::from_cocycle(b.base(), b.level(), std::move(values));
}

Rational conjugation_ratio(const Element& u, const Element& conjugator) {
  const Element v = compose(compose(conjugator, u), inverse(conjugator));
  return ratio(norm1(v), norm1(u));
}

DistortionReport conj_distortion(unsigned base, unsigned m, std::uint64_t width) {
  const Residue n = residue_count(base, m);
  if (m == 0 || width < 1 || width > n - 1)
    throw ValidationError("distortion width must satisfy 1 <= n <= q^m - 1");
  DistortionReport r{base,
                     m,
                     width,
                     ClopenSet::from_classes(base, m, {0, (width + 1) % n}),
                     Element(base),
                     generating_involution(ClopenSet::cylinder(base, m, 0)),
                     Element(base),
                     AdicRational(base),
                     AdicRational(base),
                     Rational(0),
                     Integer(0)};
  r.conjugator = induced(r.a).map;
  r.v = compose(compose(r.conjugator, r.u), inverse(r.conjugator));
  r.norm_u = norm1(r.u);
  r.norm_v = norm1(r.v);
  r.ratio = ratio(r.norm_v, r.norm_u);
  r.linf_v = linf(Element(base), r.v);
  return r;
}

std::vector<Element> zn_embedding(unsigned n, const ClopenSet& a) {
  if (n == 0) return {};
  if (tower_height(a) < 2 * static_cast<std::uint64_t>(n))
    throw OverlapError("zn embedding needs A, T(A), ..., T^(2n-1)(A) pairwise disjoint");
  std::vector<Element> out;
  out.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    const Element even = induced(translate(a, 2 * static_cast<std::int64_t>(i))).map;
    const Element odd = induced(translate(a, 2 * static_cast<std::int64_t>(i) + 1)).map;
    out.push_back(compose(even, inverse(odd)));
  }
  return out;
}

Element zn_word(const std::vector<Element>& generators, const std::vector<std::int64_t>& exponents) {
  if (generators.size() != exponents.size())
    throw ValidationError("exponent vector length does not match the number of generators");
  if (generators.empty()) throw ValidationError("zn word needs at least one generator");
  Element w(generators.front().base());
  for (std::size_t i = 0; i < generators.size(); ++i) w = compose(w, power(generators[i], exponents[i]));
  return w;
}

}  // namespace odo
