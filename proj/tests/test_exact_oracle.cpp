#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "brpa/analytic.hpp"
#include "brpa/error.hpp"
#include "brpa/exact_oracle.hpp"
#include "oracles.hpp"

using namespace brpa;

TEST_SUITE("exact-oracle") {

TEST_CASE("pairing counts") {
  for (std::uint32_t N = 1; N <= 7; ++N) {
    std::uint64_t count = 0;
    for_each_pairing(N, [&](std::span<const std::uint32_t>) { ++count; });
    CHECK(count == double_factorial_odd(N));
  }
  CHECK(double_factorial_odd(2) == 3);
  CHECK(double_factorial_odd(3) == 15);
  CHECK(double_factorial_odd(9) == 34459425);
}

TEST_CASE("pairings are distinct and agree with the permutation route") {
  for (std::uint32_t N = 1; N <= 5; ++N) {
    std::set<std::vector<unsigned>> seen;
    std::vector<unsigned> prev;
    for_each_pairing(N, [&](std::span<const std::uint32_t> p) {
      std::vector<unsigned> v(p.begin(), p.end());
      CHECK(seen.insert(v).second);
      if (!prev.empty()) CHECK(prev < v);  // lexicographic order
      prev = v;
    });
    if (N <= 4) CHECK(seen == oracle::matchings_by_permutation(N));
    CHECK(seen.size() == double_factorial_odd(N));
  }
}

TEST_CASE("shards partition the enumeration") {
  std::uint64_t total = 0;
  for (std::uint32_t shard = 0; shard < 9; ++shard) {
    for_each_pairing_in_shard(5, shard, [&](std::span<const std::uint32_t> p) {
      CHECK(p[0] == shard + 2);
      ++total;
    });
  }
  CHECK(total == 945);
}

TEST_CASE("enumeration limits") {
  try {
    for_each_pairing(10, [](std::span<const std::uint32_t>) {});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kResourceLimit);
  }
  try {
    exact_distribution(5, 2, ExactStatistic::kLoopCount);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kResourceLimit);
  }
  try {
    exact_distribution(2, 2, ExactStatistic::kMaxTreeSizes);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedMethod);
  }
  CHECK_FALSE(statistic_from_name("bogus").has_value());
}

TEST_CASE("small exact laws") {
  const auto d2 = exact_distribution(2, 1, ExactStatistic::kLoopCount);
  CHECK(d2.probability("2") == Rational(1, 3));
  CHECK(d2.probability("1") == Rational(2, 3));
  CHECK(exact_distribution(3, 1, ExactStatistic::kLoopCount).mean() == Rational(23, 15));
  const auto c2 = exact_distribution(2, 1, ExactStatistic::kConnected);
  CHECK(c2.probability("1") == Rational(2, 3));
  CHECK(to_double(c2.probability("1")) == doctest::Approx(connected_g1_exact(2)));
}

TEST_CASE("exact laws sum to one and match the sequential process") {
  for (auto [n, m] : {std::pair{2u, 1u}, std::pair{4u, 1u}, std::pair{2u, 2u}, std::pair{3u, 2u},
                      std::pair{2u, 3u}, std::pair{6u, 1u}}) {
    const auto d = exact_distribution(n, m, ExactStatistic::kLoopsAndDegrees);
    Rational total = 0;
    for (const auto& [k, c] : d.counts) total += d.probability(k);
    CHECK(total == 1);
    const auto law = oracle::sequential_law(n, m, [](const oracle::Dense& g) { return g.loops_and_degrees(); });
    REQUIRE(law.size() == d.counts.size());
    for (const auto& [k, q] : law) CHECK(d.probability(k) == q);
  }
}

TEST_CASE("spanning tree law equals the product formula") {
  for (auto [n, m] : {std::pair{2u, 1u}, std::pair{5u, 1u}, std::pair{8u, 1u}, std::pair{2u, 2u},
                      std::pair{4u, 2u}, std::pair{2u, 4u}}) {
    const auto d = exact_distribution(n, m, ExactStatistic::kSpanningRecursive);
    CHECK(d.probability("1") == connect_probability_exact(n, m));
  }
}

TEST_CASE("other statistics") {
  const auto trees = exact_distribution(3, 1, ExactStatistic::kMaxTreeSizes);
  Rational total = 0;
  for (const auto& [k, c] : trees.counts) total += trees.probability(k);
  CHECK(total == 1);
  CHECK(trees.probability("1,1,1") == Rational(1, 15));
  CHECK(trees.probability("3") == connect_probability_exact(3, 1));
  const auto par = exact_distribution(2, 2, ExactStatistic::kParallelPairs);
  CHECK(par.counts.size() >= 2);
  const auto prefix = exact_distribution(4, 2, ExactStatistic::kPrefixMaxtree, 4);
  CHECK(prefix.probability("1") == 1);
  const auto degs = exact_distribution(3, 1, ExactStatistic::kDegreeSequence);
  for (const auto& [k, c] : degs.counts) CHECK(k.find(';') == std::string::npos);
}

TEST_CASE("Stirling numbers") {
  CHECK(stirling_s(3, 3) == 1);
  CHECK(stirling_s(3, 2) == 3);
  CHECK(stirling_s(3, 1) == 2);
  for (unsigned l = 1; l <= 8; ++l) {
    for (unsigned k = 1; k <= l; ++k) CHECK(stirling_s(l, k) == oracle::stirling_by_cycles(l, k));
  }
  const auto c = stirling_identity_check(3, 2);
  CHECK(c.lhs == 9);
  CHECK(c.rhs == 9);
  for (unsigned l = 2; l <= 12; ++l) {
    for (unsigned k = 1; k < l; ++k) {
      const auto s = stirling_identity_check(l, k);
      CHECK(s.lhs == s.rhs);
    }
  }
  CHECK_THROWS_AS(stirling_s(21, 3), Error);
}

TEST_CASE("recursive tree generating function") {
  const std::vector<Rational> z = {Rational(2, 3), Rational(5, 7), Rational(1, 2), Rational(3), Rational(1, 9),
                                   Rational(4, 5), Rational(7, 2)};
  const auto c3 = recursive_tree_gf_check(3, std::span<const Rational>(z));
  CHECK(c3.trees == 2);
  CHECK(c3.lhs == z[0] * z[0] + z[0] * z[1]);
  CHECK(c3.lhs == c3.rhs);
  const auto c2 = recursive_tree_gf_check(2, std::span<const Rational>(z));
  CHECK(c2.lhs == z[0]);
  std::mt19937_64 gen(5);
  for (std::uint32_t nu = 1; nu <= 7; ++nu) {
    std::vector<Rational> rz;
    for (int i = 0; i < 7; ++i) rz.emplace_back(static_cast<long>(gen() % 50 + 1), static_cast<long>(gen() % 50 + 1));
    const auto c = recursive_tree_gf_check(nu, std::span<const Rational>(rz));
    CHECK(c.lhs == c.rhs);
    std::uint64_t fact = 1;
    for (std::uint32_t i = 2; i < nu; ++i) fact *= i;
    CHECK(c.trees == fact);
  }
  const std::vector<double> rz = {0.3, 1.7, 2.2, 0.9, 0.1, 5.0, 0.4};
  CHECK(recursive_tree_gf_check(8, std::span<const double>(rz)).holds());
  CHECK_THROWS_AS(recursive_tree_gf_check(9, std::span<const double>(rz)), Error);
}

TEST_CASE("martingale one-step identity") {
  const auto one = martingale_step_check(1, 1, 1, 1, false);
  CHECK(one.expected == Rational(5, 3));
  CHECK(one.expected == one.predicted);
  CHECK(martingale_step_check(3, 5, 2, 0, false).expected == 1);
  for (std::uint64_t t = 1; t <= 30; ++t) {
    for (std::uint64_t X = 1; X <= t; ++X) {
      for (unsigned l = 0; l <= 6; ++l) {
        const auto a = martingale_step_check(X, t, 1, l, false);
        REQUIRE(a.expected == a.predicted);
        const auto b = martingale_step_check(X, t, 1, l, true);
        REQUIRE(b.expected == b.predicted);
      }
    }
  }
}

}  // TEST_SUITE
