#include <doctest.h>

#include <cmath>
#include <random>

#include "odo/element.hpp"
#include "oracles.hpp"

using namespace odo;

namespace {

Element el(unsigned base, unsigned level, std::vector<std::int64_t> c) {
  return Element::from_cocycle(base, level, std::move(c));
}

AdicRational q2(long num, unsigned exp) { return AdicRational(2, Integer(num), exp); }

const Element T = Element::odometer(2);
const Element swap2 = el(2, 1, {1, -1});

}  // namespace

TEST_CASE("from_cocycle") {
  CHECK(el(2, 0, {1}) == T);
  CHECK(swap2.level() == 1);
  CHECK_THROWS_AS(el(2, 1, {1, 0}), NotBijective);
  try {
    el(2, 1, {1, 0});
  } catch (const NotBijective& e) {
    CHECK(e.first == 0);
    CHECK(e.second == 1);
    CHECK(e.image == 1);
  }
  // a non-canonical copy of T collapses to level 0
  CHECK(el(2, 2, {1, 1, 1, 1}) == T);
  CHECK(el(2, 2, {1, -1, 1, -1}) == swap2);
  CHECK_THROWS_AS(el(2, 2, {1, 1, 1}), ValidationError);
  CHECK(Element::odometer(3, -2).cocycle()[0] == -2);
}

TEST_CASE("refine") {
  auto t = refine(T, 2);
  CHECK(t.values == std::vector<std::int64_t>{1, 1, 1, 1});
  CHECK(refine(swap2, 2).values == std::vector<std::int64_t>{1, -1, 1, -1});
  CHECK(Element::from_cocycle(refine(swap2, 5)) == swap2);
}

TEST_CASE("compose") {
  auto c = compose(swap2, T);
  CHECK(c == el(2, 1, {0, 2}));
  CHECK(refine(c, 2).values == oracle::composed_cocycle(swap2, T, 2));
  CHECK(compose(swap2, swap2).is_identity());
  CHECK(compose(swap2, Element(2)) == swap2);
  CHECK_THROWS_AS(compose(T, Element::odometer(3)), ValidationError);
}

TEST_CASE("inverse") {
  CHECK(inverse(T) == Element::odometer(2, -1));
  CHECK(inverse(swap2) == swap2);
  auto ta = el(2, 2, {2, 0, 2, 0});
  CHECK(inverse(ta) == el(2, 1, {-2, 0}));
  CHECK(compose(ta, inverse(ta)).is_identity());
}

TEST_CASE("metrics") {
  const Element id(2);
  CHECK(d1(id, T) == q2(1, 0));
  CHECK(d1(id, swap2) == q2(1, 0));
  CHECK(du(id, swap2) == q2(1, 0));
  CHECK(linf(id, swap2) == 1);
  auto inv = el(2, 2, {1, -1, 0, 0});
  CHECK(d1(id, inv) == q2(1, 1));
  CHECK(du(id, inv) == q2(1, 1));
  CHECK(dp(id, inv, 1.0) == doctest::Approx(0.5));
  CHECK(dp(id, el(2, 1, {2, 0}), 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(dp(id, T, 0.5), ValidationError);
  CHECK(std::get<AdicRational>(metric(id, T, MetricKind::D1)) == q2(1, 0));
  CHECK(std::get<Integer>(metric(id, T, MetricKind::Linf)) == 1);
}

TEST_CASE("index") {
  CHECK(index(T) == 1);
  CHECK(index(swap2) == 0);
  CHECK(index(el(2, 2, {2, 0, 2, 0})) == 1);
  CHECK(index(Element::odometer(3, -7)) == -7);
}

TEST_CASE("support") {
  CHECK(support(T).is_full());
  CHECK(support(Element(2)).is_empty());
  CHECK(support(el(2, 2, {1, -1, 0, 0})) == ClopenSet::from_classes(2, 2, {0, 1}));
}

TEST_CASE("power") {
  CHECK(power(T, std::int64_t{5}) == Element::odometer(2, 5));
  CHECK(power(T, std::int64_t{-3}) == Element::odometer(2, -3));
  CHECK(power(swap2, std::int64_t{2}).is_identity());
  CHECK(power(swap2, Integer("1000000000000000000000001")) == swap2);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto u = oracle::random_element(rng, 2, 3);
    Element acc(2);
    for (int e = 0; e < 7; ++e) {
      CHECK(power(u, std::int64_t{e}) == acc);
      acc = compose(acc, u);
    }
    CHECK(compose(power(u, std::int64_t{-4}), power(u, std::int64_t{4})).is_identity());
  }
}

TEST_CASE("cycles match a direct orbit oracle") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto u = oracle::random_element(rng, 2 + static_cast<unsigned>(i % 2), 2 + static_cast<unsigned>(i % 3));
    std::size_t covered = 0;
    for (const auto& c : cycles(u)) {
      CHECK(c.sum == oracle::orbit_sum(u, u.level(), c.residues.front()));
      CHECK(c.residues.front() == *std::min_element(c.residues.begin(), c.residues.end()));
      covered += c.residues.size();
    }
    CHECK(covered == u.residues());
  }
}

TEST_CASE("restrict_to and image") {
  auto u = el(2, 2, {1, -1, 4, 0});
  auto s = ClopenSet::from_classes(2, 2, {0, 1});
  CHECK(restrict_to(u, s) == el(2, 2, {1, -1, 0, 0}));
  CHECK(image(u, ClopenSet::from_classes(2, 2, {0})) == ClopenSet::from_classes(2, 2, {1}));
  CHECK_THROWS_AS(restrict_to(u, ClopenSet::from_classes(2, 2, {0})), ValidationError);
}

TEST_CASE("group and metric properties on random elements") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned base = 2 + static_cast<unsigned>(trial % 2);
    const unsigned maxl = base == 2 ? 5 : 3;
    auto u = oracle::random_element(rng, base, static_cast<unsigned>(rng() % (maxl + 1)));
    auto v = oracle::random_element(rng, base, static_cast<unsigned>(rng() % (maxl + 1)));
    auto w = oracle::random_element(rng, base, static_cast<unsigned>(rng() % (maxl + 1)));
    const Element id(base);
    const unsigned top = std::max({u.level(), v.level(), w.level()});

    // compose agrees with pointwise evaluation
    CHECK(refine(compose(u, v), top).values == oracle::composed_cocycle(u, v, top));

    CHECK(compose(compose(u, v), w) == compose(u, compose(v, w)));
    CHECK(compose(u, id) == u);
    CHECK(compose(id, u) == u);
    CHECK(compose(u, inverse(u)).is_identity());
    CHECK(compose(inverse(u), u).is_identity());

    // sum of n_w is divisible by q^k
    Integer s = 0;
    for (auto x : u.cocycle()) s += Integer(static_cast<long>(x));
    CHECK(s % Integer(static_cast<unsigned long>(u.residues())) == 0);

    CHECK(d1(compose(u, w), compose(v, w)) == d1(u, v));
    CHECK(d1(u, v) == d1(compose(u, inverse(v)), id));
    CHECK(du(u, v) <= d1(u, v));
    CHECK(d1(u, v) <= AdicRational::from_integer(base, linf(u, v)));
    CHECK(d1(u, v) >= AdicRational::from_integer(base, abs(Integer(index(u) - index(v)))));

    CHECK(index(compose(u, v)) == index(u) + index(v));
    CHECK(index(commutator(u, v)) == 0);
    CHECK(index(compose(compose(w, u), inverse(w))) == index(u));
    CHECK(du(id, compose(compose(w, u), inverse(w))) == du(id, u));

    CHECK(subset(support(compose(u, v)), unite(support(u), support(v))));
    CHECK(support(inverse(u)) == support(u));

    // refinement invariance of the metrics against an oracle table
    const unsigned fine = top + 1;
    const auto cu = oracle::cocycle_at(u, fine);
    const auto cv = oracle::cocycle_at(v, fine);
    CHECK(d1(u, v) == AdicRational(base, Integer(static_cast<long>(oracle::l1_numerator(cu, cv))), fine));
    CHECK(Element::from_cocycle(refine(u, fine)) == u);
  }
}
