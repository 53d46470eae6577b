// Acceptance gate: runs each criterion at its stated scale and tolerance and
// prints one PASS/FAIL line per criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "odo/concentration.hpp"
#include "odo/decompose.hpp"
#include "odo/genlab.hpp"
#include "odo/towers.hpp"
#include "oracles.hpp"

using namespace odo;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Records each distinct failure message once.
struct Checker {
  Outcome out;
  std::size_t checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok || out.detail.find(what) != std::string::npos) return;
    out.detail += (out.passed ? "" : "; ") + what;
    out.passed = false;
  }
};

ClopenSet random_set(std::mt19937_64& rng, unsigned base, unsigned level) {
  const Residue n = oracle::pow_q(base, level);
  std::vector<Residue> c;
  const auto density = 1 + rng() % 7;
  for (Residue w = 0; w < n; ++w)
    if (rng() % 8 < density) c.push_back(w);
  if (c.empty()) c.push_back(rng() % n);
  return ClopenSet::from_classes(base, level, std::move(c));
}

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation::from_images(std::move(v));
}

AdicRational one(unsigned base) { return AdicRational::from_integer(base, 1); }

Outcome kac_identity() {
  Checker c;
  auto check_set = [&](const ClopenSet& a) {
    const KacReport k = kac_check(a);
    c.expect(k.integral == one(a.base()) && k.distance == one(a.base()),
             "Kac identity fails for a set at level " + std::to_string(a.level()));
  };
  // exhaustive: every subset of residues at the top level covers all coarser sets
  for (const auto& [base, level] : {std::pair{2u, 4u}, std::pair{3u, 2u}}) {
    const Residue n = oracle::pow_q(base, level);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<Residue> classes;
      for (Residue w = 0; w < n; ++w)
        if (mask >> w & 1u) classes.push_back(w);
      check_set(ClopenSet::from_classes(base, level, std::move(classes)));
    }
  }
  std::mt19937_64 rng(101);
  // base 3 levels 3 and 4 have too many subsets to enumerate
  for (unsigned level : {3u, 4u})
    for (int i = 0; i < 1000; ++i) check_set(random_set(rng, 3, level));
  for (unsigned base : {2u, 3u})
    for (int i = 0; i < 1000; ++i) check_set(random_set(rng, base, 5 + static_cast<unsigned>(i % 6)));
  c.out.detail = c.out.passed ? std::to_string(c.checks) + " sets, exhaustive to level 4 (q=2) and 2 (q=3)"
                              : c.out.detail;
  return c.out;
}

Outcome index_homomorphism() {
  Checker c;
  std::mt19937_64 rng(202);
  for (unsigned base : {2u, 3u}) {
    for (int i = 0; i < 1000; ++i) {
      const auto u = oracle::random_element(rng, base, static_cast<unsigned>(rng() % 13));
      const auto v = oracle::random_element(rng, base, static_cast<unsigned>(rng() % 13));
      // index straight from the definition: sum of the cocycle over q^k
      Integer su = 0;
      for (auto x : u.cocycle()) su += Integer(static_cast<long>(x));
      const Integer qk(static_cast<unsigned long>(u.residues()));
      c.expect(su % qk == 0 && index(u) == su / qk, "index is not the integral of the cocycle");
      c.expect(index(compose(u, v)) == index(u) + index(v), "index is not additive");
      c.expect(index(commutator(u, v)) == 0, "commutator has nonzero index");
      c.expect(d1(u, v) >= AdicRational::from_integer(base, abs(Integer(index(u) - index(v)))),
               "d1 below the index gap");
    }
  }
  c.out.detail = c.out.passed ? std::to_string(c.checks) + " exact checks on 2000 pairs" : c.out.detail;
  return c.out;
}

Outcome belinskaya() {
  Checker c;
  std::mt19937_64 rng(303);
  for (int i = 0; i < 1000; ++i) {
    const unsigned base = 2 + static_cast<unsigned>(i % 2);
    const auto u = oracle::random_element(rng, base, static_cast<unsigned>(rng() % (base == 2 ? 9 : 6)));
    const auto b = belinskaya_decompose(u);
    c.expect(disjoint(b.negative_support, b.periodic_support) && disjoint(b.negative_support, b.positive_support) &&
                 disjoint(b.periodic_support, b.positive_support),
             "supports overlap");
    c.expect(unite(unite(b.negative_support, b.periodic_support), b.positive_support) == support(u),
             "supports do not cover supp U");
    c.expect(compose(compose(b.negative, b.periodic), b.positive) == u, "product does not reconstruct U");
    const Element id(base);
    c.expect(d1(id, u) == d1(id, b.negative) + d1(id, b.periodic) + d1(id, b.positive), "d1 is not additive");
    // classify every sigma-cycle by iterating the action on integers
    const unsigned level = u.level();
    const Residue n = u.residues();
    std::vector<char> seen(n, 0);
    for (Residue w = 0; w < n; ++w) {
      if (seen[w]) continue;
      std::int64_t x = static_cast<std::int64_t>(w);
      do {
        seen[static_cast<Residue>(x % static_cast<std::int64_t>(n) + static_cast<std::int64_t>(n)) % n] = 1;
        x = oracle::act(u, x);
      } while (((x % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n)) % static_cast<std::int64_t>(n) !=
               static_cast<std::int64_t>(w));
      const std::int64_t sum = x - static_cast<std::int64_t>(w);
      const bool moved = u.cocycle()[w] != 0;
      if (sum > 0) c.expect(b.positive_support.contains(w, level), "positive cycle misclassified");
      if (sum < 0) c.expect(b.negative_support.contains(w, level), "negative cycle misclassified");
      if (sum == 0 && moved) c.expect(b.periodic_support.contains(w, level), "periodic cycle misclassified");
    }
  }
  c.out.detail = c.out.passed ? std::to_string(c.checks) + " checks on 1000 elements" : c.out.detail;
  return c.out;
}

Outcome tower_isometry() {
  Checker c;
  std::mt19937_64 rng(404);
  for (unsigned k = 1; k <= 8; ++k) {
    const auto tower = rokhlin_tower(ClopenSet::cylinder(2, k, 0));
    for (int i = 0; i < 200; ++i) {
      const auto s = random_perm(rng, tower.height);
      const auto t = random_perm(rng, tower.height);
      const auto rs = rho_embed(tower, s);
      const auto rt = rho_embed(tower, t);
      c.expect(d1(rs, rt).to_rational() == perm_metric(s, t, PermMetric::L1), "d1 differs from d_L1");
      c.expect(rho_embed(tower, s * t) == compose(rs, rt), "rho is not a homomorphism");
    }
  }
  c.out.detail = c.out.passed ? "200 pairs for each k = 1..8" : c.out.detail;
  return c.out;
}

Outcome rank_two_small() {
  Checker c;
  const auto g = build_generators(2, {2, 3, 5}, {2, 4, 7});
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b)
      c.expect(disjoint(support(g.v[a]), support(g.v[b])), "disjointified supports overlap");
  const auto pair = disjointify({prime_cycle(2, 2, 2), prime_cycle(2, 3, 4)});
  c.expect(g.disjointify_distances[0] == AdicRational(2, Integer(1), 3),
           "d1(V_0, U_0) = " + g.disjointify_distances[0].str() + ", expected 1/8 (the pair U_0, U_1 alone gives " +
               pair.distances[0].str() + "; the U_0-orbit of supp U_2 adds {4,5} mod 128)");
  std::ostringstream table;
  for (std::size_t n = 0; n < 3; ++n) {
    const auto r = assemble_and_recover(g.v, n);
    c.expect(r.crt_residual.is_zero() && power(g.product, r.crt_exponent) == g.v[n],
             "CRT exponent does not recover V_" + std::to_string(n));
    for (std::size_t i = 1; i < r.rows.size(); ++i)
      c.expect(r.rows[i].residual < r.rows[i - 1].residual,
               "residual table not strictly decreasing for n = " + std::to_string(n));
    if (n == 0)
      for (const auto& row : r.rows) table << (row.m == 1 ? "" : ", ") << row.residual.str();
  }
  c.out.detail = c.out.passed ? "n=0 residuals " + table.str() : c.out.detail;
  return c.out;
}

Outcome schedule_checker() {
  Checker c;
  const auto s = paper_schedule(3);
  const auto r = check_schedule(s, 3);
  for (std::size_t n = 0; n < 3; ++n) {
    for (const char* cond : {"prime-bound", "growth", "product", "product-count"}) {
      const auto* x = r.find(n, cond);
      c.expect(x && x->passed, std::string(cond) + " fails at n = " + std::to_string(n));
    }
  }
  c.out.detail = c.out.passed ? "inequality passes for n = 0, 1, 2 (k = 4, 256, 16777216)" : c.out.detail;
  return c.out;
}

Outcome distortion() {
  Checker c;
  std::ostringstream ratios;
  for (unsigned m = 2; m <= 10; ++m) {
    const auto start = std::chrono::steady_clock::now();
    const auto a = ClopenSet::cylinder(2, m, 0);
    const auto r = conj_distortion(2, m, (1u << m) - 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(r.a == a, "base set is not {0} mod 2^m");
    const Element v = compose(compose(r.conjugator, r.u), inverse(r.conjugator));
    c.expect(r.ratio == Rational(static_cast<long>((1u << m) - 1)) && ratio(norm1(v), norm1(r.u)) == r.ratio,
             "ratio != 2^m - 1 at m = " + std::to_string(m));
    c.expect(secs < 1.0, "case m = " + std::to_string(m) + " took over 1 s");
    ratios << (m == 2 ? "" : " ") << to_string(r.ratio);
  }
  c.out.detail = c.out.passed ? "ratios " + ratios.str() : c.out.detail;
  return c.out;
}

// Max over sigma-orbits at `depth` of sum |n_w|, by iterating the action.
Integer max_block_weight(const Element& u, unsigned depth) {
  const Residue n = oracle::pow_q(u.base(), depth);
  const auto sn = static_cast<std::int64_t>(n);
  std::vector<char> seen(n, 0);
  Integer best = 0;
  for (Residue w = 0; w < n; ++w) {
    if (seen[w]) continue;
    Integer weight = 0;
    std::int64_t x = static_cast<std::int64_t>(w);
    do {
      seen[static_cast<Residue>(((x % sn) + sn) % sn)] = 1;
      const std::int64_t y = oracle::act(u, x);
      weight += Integer(static_cast<long>(std::llabs(y - x)));
      x = y;
    } while (((x % sn) + sn) % sn != static_cast<std::int64_t>(w));
    if (weight > best) best = weight;
  }
  return best;
}

Outcome equal_norm_split() {
  Checker c;
  std::mt19937_64 rng(808);
  std::size_t exact = 0;
  for (int i = 0; i < 200; ++i) {
    const unsigned base = 2 + static_cast<unsigned>(i % 2);
    const auto u = oracle::random_periodic(rng, base, static_cast<unsigned>(rng() % (base == 2 ? 6 : 4)));
    const unsigned depth = u.level() + 4;
    const AdicRational tol(base, max_block_weight(u, depth), depth);
    for (unsigned parts : {2u, 3u, 4u}) {
      const auto s = split_equal_norm(u, parts, depth);
      Element prod(base);
      for (const auto& p : s.parts) prod = compose(prod, p);
      c.expect(prod == u, "split does not reconstruct U");
      bool all_equal = true;
      for (const auto& p : s.parts) {
        const AdicRational dev = (norm1(p) * Integer(parts) - norm1(u)).abs();
        c.expect(dev <= tol * Integer(parts), "part norm outside tolerance");
        all_equal = all_equal && dev.is_zero();
      }
      exact += all_equal;
    }
  }
  c.out.detail = c.out.passed ? "600 splits, " + std::to_string(exact) + " exactly balanced" : c.out.detail;
  return c.out;
}

Outcome zn_embedding_qi() {
  Checker c;
  std::ostringstream info;
  for (unsigned n : {1u, 2u}) {
    const auto a = ClopenSet::cylinder(2, 3, 0);
    const auto gens = zn_embedding(n, a);
    Rational lo(-1), hi(-1);
    std::vector<std::int64_t> m(n, 0);
    std::function<void(unsigned, long)> walk = [&](unsigned i, long budget) {
      if (i == n) {
        long total = 0;
        for (auto x : m) total += std::labs(x);
        if (total == 0) {
          c.expect(zn_word(gens, m).is_identity(), "zero exponents do not give the identity");
          return;
        }
        const Rational r = norm1(zn_word(gens, m)).to_rational() / Rational(total);
        if (lo < 0 || r < lo) lo = r;
        if (hi < 0 || r > hi) hi = r;
        return;
      }
      for (long x = -budget; x <= budget; ++x) {
        m[i] = x;
        walk(i + 1, budget - std::labs(x));
      }
      m[i] = 0;
    };
    walk(0, 20);
    c.expect(lo > 0 && hi / lo <= 4, "distortion bound c2/c1 exceeds 4 for n = " + std::to_string(n));
    info << (n == 1 ? "" : "; ") << "n=" << n << " c1=" << to_string(lo) << " c2=" << to_string(hi);
  }
  c.out.detail = c.out.passed ? info.str() : c.out.detail;
  return c.out;
}

Outcome concentration() {
  Checker c;
  const auto exact = exact_profile(6, PermMetric::L1, Functional::DistToIdentity);
  const auto mc = mc_profile(6, PermMetric::L1, Functional::DistToIdentity, 100000, 1);
  for (std::size_t i = 0; i < exact.epsilons.size(); ++i) {
    const double p = exact.alpha[i];
    const double se = std::sqrt(p * (1 - p) / 100000.0);
    c.expect(std::abs(mc.alpha[i] - p) <= 3 * se, "Monte Carlo alpha at eps = " + to_string(exact.epsilons[i]) +
                                                      " is " + std::to_string(mc.alpha[i]) + ", exact " +
                                                      std::to_string(p));
  }
  std::ostringstream info;
  double previous = 2;
  for (std::size_t n : {16u, 64u, 256u}) {
    const auto h = mc_profile(n, PermMetric::Hamming, Functional::DistToIdentity, 100000, 1, {Rational(1, 10)});
    info << (n == 16 ? "" : ", ") << "alpha_" << n << "(0.1) = " << h.alpha[0];
    c.expect(h.alpha[0] < previous, "Hamming alpha(0.1) does not strictly decrease at n = " + std::to_string(n) +
                                        " (" + info.str() + ")");
    previous = h.alpha[0];
  }
  c.out.detail = c.out.passed ? "n=6 within 3 SE at 21 eps; " + info.str() : c.out.detail;
  return c.out;
}

Outcome three_cycle_words() {
  Checker c;
  std::size_t words = 0;
  std::size_t longest = 0;
  const Element t = Element::odometer(2);
  for (unsigned level : {3u, 4u, 6u}) {
    const auto tower = rokhlin_tower(ClopenSet::cylinder(2, level, 0));
    const std::uint64_t height = tower.height;
    for (std::uint64_t n = 3; n <= height - 2; ++n) {
      std::vector<std::uint32_t> window(n);
      std::iota(window.begin(), window.end(), 0u);
      const Element u = rho_embed(tower, Permutation::cycle(height, window));
      for (std::uint64_t i = 0; i + 3 <= height; ++i) {
        const Word w = word_for_3cycle(i, n, height);
        const std::array<std::uint32_t, 3> pts{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1),
                                               static_cast<std::uint32_t>(i + 2)};
        const Element target = rho_embed(tower, Permutation::cycle(height, pts));
        c.expect(evaluate(w, t, u) == target, "word for (" + std::to_string(i) + " i+1 i+2) with n = " +
                                                  std::to_string(n) + ", N = " + std::to_string(height) +
                                                  " evaluates wrongly");
        c.expect(w.size() <= 20 * height, "word longer than 20 N");
        longest = std::max(longest, w.size());
        ++words;
      }
    }
  }
  c.out.detail = c.out.passed ? std::to_string(words) + " words over all (i, n), longest " + std::to_string(longest)
                              : c.out.detail;
  return c.out;
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds; 0 for none
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "Kac identity", 10, kac_identity},
      {2, "index integrality and homomorphism", 30, index_homomorphism},
      {3, "Belinskaya decomposition", 0, belinskaya},
      {4, "tower isometry", 0, tower_isometry},
      {5, "rank-2 construction, small scale", 0, rank_two_small},
      {6, "schedule checker", 5, schedule_checker},
      {7, "conjugation distortion", 0, distortion},
      {8, "equal-norm splitting", 0, equal_norm_split},
      {9, "Z^n embedding", 0, zn_embedding_qi},
      {10, "concentration cross-check", 60, concentration},
      {11, "word_for_3cycle", 0, three_cycle_words},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit > 0 && secs >= cr.limit) {
      o.passed = false;
      o.detail = "time limit exceeded; " + o.detail;
    }
    std::printf("[%s] %2d %-36s %7.2f s  %s\n", o.passed ? "PASS" : "FAIL", cr.id, cr.name, secs, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.passed;
  }
  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
