#include <doctest.h>

#include <random>

#include "odo/permutation.hpp"
#include "oracles.hpp"

using namespace odo;

TEST_CASE("construction and validation") {
  CHECK(Permutation(3).is_identity());
  CHECK_THROWS_AS(Permutation(0), ValidationError);
  CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(Permutation::from_images({0, 3, 1}), ValidationError);
  auto c = Permutation::cycle(4, {0, 1, 2, 3});
  CHECK(c(3) == 0);
  CHECK(c.order() == 4);
  CHECK_FALSE(c.is_even());
  CHECK(Permutation::cycle(5, {0, 1, 2}).is_even());
  CHECK(Permutation::reversal(4).images()[0] == 3);
}

TEST_CASE("product applies the right factor first") {
  auto s = Permutation::transposition(3, 0, 1);
  auto t = Permutation::transposition(3, 1, 2);
  auto st = s * t;
  CHECK(st(1) == s(t(1)));
  CHECK(st == Permutation::cycle(3, {0, 1, 2}));
  CHECK((st * st.inverse()).is_identity());
}

TEST_CASE("metric examples") {
  CHECK(perm_metric(Permutation::transposition(3, 0, 1), Permutation(3), PermMetric::L1) == Rational(2, 3));
  CHECK(perm_metric(Permutation(5), Permutation(5), PermMetric::L1) == 0);
  CHECK(perm_metric(Permutation::reversal(4), Permutation(4), PermMetric::L1) == 2);
  CHECK(perm_metric(Permutation::reversal(4), Permutation(4), PermMetric::Hamming) == 1);
  CHECK(perm_metric(Permutation::reversal(3), Permutation(3), PermMetric::Hamming) == Rational(2, 3));
  CHECK_THROWS_AS(perm_metric(Permutation(3), Permutation(4), PermMetric::L1), ValidationError);
}

TEST_CASE("metric properties over all of S_5") {
  const auto all = oracle::all_perms(5);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = Permutation::from_images(all[rng() % all.size()]);
    const auto t = Permutation::from_images(all[rng() % all.size()]);
    const auto p = Permutation::from_images(all[rng() % all.size()]);
    for (auto kind : {PermMetric::L1, PermMetric::Hamming}) {
      CHECK(perm_metric(s * p, t * p, kind) == perm_metric(s, t, kind));
      CHECK(perm_metric(s, t, kind) == perm_metric(t, s, kind));
    }
    CHECK(perm_metric(s, t, PermMetric::Hamming) <= perm_metric(s, t, PermMetric::L1));
  }
}

TEST_CASE("parse metric names") {
  CHECK(parse_perm_metric("l1") == PermMetric::L1);
  CHECK(parse_perm_metric("hamming") == PermMetric::Hamming);
  CHECK_THROWS_AS(parse_perm_metric("l2"), ValidationError);
  CHECK(to_string(PermMetric::Hamming) == "hamming");
}
