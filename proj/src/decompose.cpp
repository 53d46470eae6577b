#include "odo/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace odo {

namespace {

std::int64_t abs_checked(std::int64_t v) { return v < 0 ? checked_sub(0, v) : v; }

}  // namespace

BelinskayaSplit belinskaya_decompose(const Element& u) {
  const auto table = refine(u, u.level());
  const std::size_t n = table.values.size();
  std::array<std::vector<std::int64_t>, 3> parts;  // negative, periodic, positive
  std::array<std::vector<Residue>, 3> supports;
  for (auto& p : parts) p.assign(n, 0);
  for (const auto& cyc : cycles(table)) {
    const int slot = cyc.sum < 0 ? 0 : (cyc.sum == 0 ? 1 : 2);
    for (Residue w : cyc.residues) {
      parts[slot][w] = table.values[w];
      if (table.values[w] != 0) supports[slot].push_back(w);
    }
  }
  auto make = [&](int slot) { return Element::from_cocycle(u.base(), u.level(), std::move(parts[slot])); };
  auto set = [&](int slot) { return ClopenSet::from_classes(u.base(), u.level(), std::move(supports[slot])); };
  return BelinskayaSplit{make(0), make(1), make(2), set(0), set(1), set(2)};
}

Periodicity periodicity(const Element& u) {
  Periodicity result;
  result.level = u.level();
  Integer order = 1;
  for (auto& cyc : cycles(u)) {
    if (cyc.sum != 0) {
      result.witness = std::move(cyc.residues);
      result.witness_sum = cyc.sum;
      return result;
    }
    Integer len(static_cast<unsigned long>(cyc.residues.size()));
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), len.get_mpz_t());
  }
  result.order = order;
  return result;
}

Integer order(const Element& u) {
  auto p = periodicity(u);
  if (!p.periodic()) throw NotPeriodic(std::move(p.witness), p.witness_sum, p.level);
  return *p.order;
}

double cocycle_entropy(const Element& u) {
  std::map<std::int64_t, std::size_t> counts;
  for (auto v : u.cocycle()) ++counts[v];
  const double total = static_cast<double>(u.residues());
  double h = 0.0;
  for (const auto& [value, count] : counts) {
    const double m = static_cast<double>(count) / total;
    h -= m * std::log(m);
  }
  return h < 0.0 ? 0.0 : h;
}

unsigned separating_level(const Element& u) {
  unsigned level = u.level();
  for (auto v : u.cocycle()) {
    if (v == 0) continue;
    // smallest L with q^L not dividing v
    unsigned l = 0;
    std::int64_t r = v;
    while (r % static_cast<std::int64_t>(u.base()) == 0) {
      r /= static_cast<std::int64_t>(u.base());
      ++l;
    }
    level = std::max(level, l + 1);
  }
  residue_count(u.base(), level);  // cap check
  return level;
}

ThreeColoring disjoint_support_3coloring(const Element& u) {
  ThreeColoring result{{ClopenSet(u.base()), ClopenSet(u.base()), ClopenSet(u.base())}, 0};
  if (u.is_identity()) return result;
  const unsigned level = separating_level(u);
  const auto table = refine(u, level);
  const auto sigma = permutation_of(table);
  const std::size_t n = sigma.size();
  std::vector<Residue> preimage(n);
  for (Residue w = 0; w < n; ++w) preimage[sigma[w]] = w;

  constexpr signed char kNone = -1;
  std::vector<signed char> color(n, kNone);
  std::array<std::vector<Residue>, 3> classes;
  for (Residue w = 0; w < n; ++w) {
    if (table.values[w] == 0) continue;
    signed char c = 0;
    while (c == color[sigma[w]] || c == color[preimage[w]]) ++c;
    color[w] = c;
    classes[static_cast<std::size_t>(c)].push_back(w);
  }
  result.level = level;
  for (std::size_t i = 0; i < 3; ++i)
    result.parts[i] = ClopenSet::from_classes(u.base(), level, std::move(classes[i]));
  return result;
}

InvolutionTriple involution_triple_decompose(const Element& u) {
  const unsigned base = u.base();
  const unsigned level = separating_level(u);
  const auto table = refine(u, level);
  const auto sigma = permutation_of(table);
  const std::size_t n = sigma.size();

  std::array<std::vector<Residue>, 5> sets;  // A1, A2, B1, B2, B3
  std::array<std::vector<std::int64_t>, 3> inv;
  for (auto& v : inv) v.assign(n, 0);
  // Involution i moves w forward and sends sigma(w) back.
  auto swap_forward = [&](std::size_t i, Residue w) {
    inv[i][w] = table.values[w];
    inv[i][sigma[w]] = checked_sub(0, table.values[w]);
  };

  for (const auto& cyc : cycles(table)) {
    const auto& r = cyc.residues;
    if (r.size() < 2) continue;  // fixed residues lie outside the support here
    std::size_t pos = 0;
    if (r.size() % 2 == 1) {
      sets[2].push_back(r[0]);
      sets[3].push_back(r[1]);
      sets[4].push_back(r[2]);
      pos = 3;
    }
    for (; pos < r.size(); pos += 2) {
      sets[0].push_back(r[pos]);
      sets[1].push_back(r[pos + 1]);
    }
  }
  for (Residue w : sets[0]) swap_forward(0, w);  // A1
  for (Residue w : sets[2]) swap_forward(0, w);  // B1
  for (Residue w : sets[3]) swap_forward(1, w);  // B2
  for (Residue w : sets[1]) swap_forward(2, w);  // A2
  for (Residue w : sets[4]) swap_forward(2, w);  // B3

  auto set = [&](std::size_t i) { return ClopenSet::from_classes(base, level, std::move(sets[i])); };
  auto elem = [&](std::size_t i) { return Element::from_cocycle(base, level, std::move(inv[i])); };
  InvolutionTriple out{elem(0), elem(1), elem(2), set(0), set(1), set(2), set(3), set(4)};
  return out;
}

Element patchwork(const std::vector<std::pair<Element, ClopenSet>>& pieces) {
  if (pieces.empty()) throw ValidationError("patchwork needs at least one piece");
  const unsigned base = pieces.front().first.base();
  unsigned level = 0;
  for (const auto& [e, s] : pieces) {
    require_same_base(base, e.base());
    require_same_base(base, s.base());
    level = std::max({level, e.level(), s.level()});
  }
  const Residue n = residue_count(base, level);
  std::vector<std::int64_t> values(n, 0);
  std::vector<char> taken(n, 0);
  for (const auto& [e, s] : pieces) {
    for (Residue w : s.classes_at(level)) {
      if (taken[w]) throw ValidationError("patchwork pieces overlap at residue " + std::to_string(w));
      taken[w] = 1;
      values[w] = e.value(w);
    }
  }
  return Element::from_cocycle(base, level, std::move(values));
}

EqualNormSplit split_equal_norm(const Element& u, unsigned parts, unsigned depth) {
  if (parts == 0) throw ValidationError("split_equal_norm needs at least one part");
  order(u);  // throws NotPeriodic
  const unsigned level = std::max(depth, u.level());
  const auto table = refine(u, level);
  const std::size_t n = table.values.size();

  std::vector<Integer> load(parts, 0);
  std::vector<std::vector<std::int64_t>> values(parts, std::vector<std::int64_t>(n, 0));
  EqualNormSplit out;
  out.depth = level;
  out.max_block_weight = 0;
  for (const auto& cyc : cycles(table)) {
    if (cyc.residues.size() < 2) continue;
    Integer weight = 0;
    for (Residue w : cyc.residues) weight += static_cast<long>(abs_checked(table.values[w]));
    // least-loaded part, lowest index on ties
    const auto target = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
    load[target] += weight;
    for (Residue w : cyc.residues) values[target][w] = table.values[w];
    out.max_block_weight = std::max(out.max_block_weight, weight);
    ++out.blocks;
  }
  out.exact = std::all_of(load.begin(), load.end(), [&](const Integer& l) { return l == load.front(); });
  out.tolerance = AdicRational(u.base(), out.max_block_weight, level);
  for (auto& v : values) out.parts.push_back(Element::from_cocycle(u.base(), level, std::move(v)));
  return out;
}

}  // namespace odo
