#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "brpa/analytic.hpp"
#include "brpa/error.hpp"
#include "brpa/exact_oracle.hpp"
#include "oracles.hpp"

using namespace brpa;

TEST_SUITE("analytic") {

TEST_CASE("rate functions at zero deviation") {
  CHECK(poisson_rate(0.0) == 0.0);
  CHECK(gamma_rate(1.0) == 0.0);
  CHECK(poisson_rate(1.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
  CHECK(poisson_rate(1.0) == doctest::Approx(0.386294).epsilon(1e-6));
  CHECK(poisson_rate(-1.0) == 1.0);
  CHECK_THROWS_AS(poisson_rate(-1.5), Error);
  CHECK_THROWS_AS(gamma_rate(0.0), Error);
}

TEST_CASE("chernoff bounds") {
  ChernoffParams p;
  p.mu = 100;
  p.t = 10;
  CHECK(chernoff(ChernoffKind::kBernoulliLower, p) == doctest::Approx(std::exp(-0.5)));
  p.eps = 0.3;
  CHECK(chernoff(ChernoffKind::kBernoulliTwoSided, p) == doctest::Approx(2 * std::exp(-3.0)));
  p.eps = 1.6;
  CHECK_THROWS_AS(chernoff(ChernoffKind::kBernoulliTwoSided, p), Error);
  CHECK(chernoff(ChernoffKind::kPoissonizedUpper, p) == doctest::Approx(std::exp(-100 * poisson_rate(0.1))));
  CHECK(chernoff(ChernoffKind::kPoissonizedLower, p) == doctest::Approx(std::exp(-100 * poisson_rate(-0.1))));
  p.nu = 50;
  p.alpha = 1.5;
  CHECK(chernoff(ChernoffKind::kGammaUpper, p) == doctest::Approx(std::exp(-50 * gamma_rate(1.5))));
  CHECK_THROWS_AS(chernoff(ChernoffKind::kGammaLower, p), Error);
  p.alpha = 0.5;
  CHECK(chernoff(ChernoffKind::kGammaLower, p) == doctest::Approx(std::exp(-50 * gamma_rate(0.5))));
  CHECK_THROWS_AS(chernoff(ChernoffKind::kGammaUpper, p), Error);
  // Equal weights: (sum d)^2 / sum d^2 = count.
  p.alpha = 0.1;
  p.weights.assign(400, 2.5);
  CHECK(chernoff(ChernoffKind::kWeightedLower, p) == doctest::Approx(std::exp(-0.005 * 400)));
}

TEST_CASE("psi, h and g") {
  CHECK(psi(0.0) == 2.0);
  for (double j = 1; j < 1e6; j *= 3.7) CHECK(psi(j) <= 1.0 / std::sqrt(j));
  CHECK(h_pair(30, 0, 100) == 0.0);
  CHECK(h_pair(50, 50, 99) == doctest::Approx(4 * std::sqrt(50.0) * (10 - std::sqrt(50.0))).epsilon(1e-12));
  CHECK(h_pair(50, 50, 99) == doctest::Approx(82.843).epsilon(1e-4));
  CHECK_THROWS_AS(h_pair(60, 50, 100), Error);
  CHECK_THROWS_AS(h_pair(51, 50, 99), Error);
  // Direct difference-of-roots form.
  for (double mu : {1.0, 40.0, 300.0}) {
    for (double nu : {2.0, 100.0, 600.0}) {
      const double N = 1001;
      const double direct = 4 * (std::sqrt(N - nu) - std::sqrt(N - mu - nu)) * (std::sqrt(N) - std::sqrt(N - nu));
      CHECK(h_pair(mu, nu, 1000) == doctest::Approx(direct).epsilon(1e-10));
      CHECK(g_min(mu, nu, 1000) == std::min(h_pair(mu, nu, 1000), h_pair(nu, mu, 1000)));
    }
  }
  // The case split: the larger first argument gives the smaller h.
  CHECK(g_min(300, 100, 1000) == h_pair(300, 100, 1000));
}

TEST_CASE("log binomial within 1e-10 relative error up to n = 1e7") {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 2000; ++i) {
    const double n = static_cast<double>(gen() % 10000000 + 1);
    const double k = static_cast<double>(gen() % static_cast<std::uint64_t>(n + 1));
    const long double ref = oracle::log_choose(n, k);
    const double got = log_binomial(n, k);
    if (ref == 0) {
      CHECK(got == 0.0);
    } else {
      CHECK(std::abs((got - ref) / ref) < 1e-10L);
    }
  }
  CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)).epsilon(1e-14));
  CHECK_THROWS_AS(log_binomial(5, 6), Error);
  CHECK_THROWS_AS(log_binomial(5.5, 2), Error);
}

TEST_CASE("refinement at r = 0") {
  const SwapTerms s = swap_terms(100, 200, 0, 1000);
  CHECK(s.X_r == 0.0);
  CHECK(s.x_2 == 0.0);
  CHECK(s.d1 == 0.0);
  CHECK(s.d2 == 0.0);
  CHECK(s.d == 0.0);
  CHECK(g_refined(100, 200, 0, 1000) == g_min(100, 200, 1000));
  IsolationBoundParams p;
  p.n = 1000;
  p.m = 4;
  p.mu = 100;
  p.nu = 200;
  p.eps = 0.5;
  const auto base = pair_isolation_bound(p);
  p.r = 0;
  const auto refined = pair_isolation_bound(p);
  CHECK(refined.g_exponent == doctest::Approx(base.g_exponent));
  CHECK(refined.log_bound <= base.log_bound);
}

TEST_CASE("refinement selects d by the sign of D") {
  for (double r : {1.0, 5.0, 20.0, 80.0}) {
    const SwapTerms s = swap_terms(100, 150, r, 1000);
    CHECK(s.d == (s.D >= 0 ? s.d1 : s.d2));
    CHECK(g_refined(100, 150, r, 1000) == doctest::Approx(g_min(100, 150, 1000) + s.d));
  }
  CHECK_THROWS_AS(swap_terms(100, 50, 1, 1000), Error);
  CHECK_THROWS_AS(swap_terms(10, 50, 11, 1000), Error);
}

TEST_CASE("isolation bound structure") {
  IsolationBoundParams p;
  p.n = 1000;
  p.m = 16;
  p.mu = 492;
  p.nu = 492;
  p.eps = 6.0 / 7.0;
  const auto b = pair_isolation_bound(p);
  CHECK(b.delta == doctest::Approx(0.016));
  const double logc = std::log(2.0) + oracle::log_choose(1000, 984) + oracle::log_choose(984, 492);
  CHECK(b.log_count == doctest::Approx(logc).epsilon(1e-10));
  CHECK(b.log_bound == doctest::Approx(logc - 16 * std::min(b.spread_exponent, b.g_exponent)));
  // The g branch alone is positive per vertex, matching the example 1 rate.
  CHECK(b.g_rate_per_vertex > 0.0);
  CHECK(example1_rate(16, 0.492, 6.0 / 7.0, 0.5).first > 0.0);

  p.delta = 0.5;
  CHECK_THROWS_AS(pair_isolation_bound(p), Error);
  p.delta = 0.016;
  CHECK_NOTHROW(pair_isolation_bound(p));
  p.delta.reset();
  p.mu = 500;
  p.nu = 500;
  CHECK_THROWS_AS(pair_isolation_bound(p), Error);
}

TEST_CASE("isolation bound degrades as eps approaches 1") {
  IsolationBoundParams p;
  p.n = 2000;
  p.m = 10;
  p.mu = 300;
  p.nu = 500;
  double prev_g = INFINITY;
  double prev_bound = -INFINITY;
  for (double eps : {0.9, 0.99, 0.999, 0.9999}) {
    p.eps = eps;
    const auto b = pair_isolation_bound(p);
    CHECK(b.g_exponent < prev_g);
    CHECK(b.log_bound >= prev_bound);
    prev_g = b.g_exponent;
    prev_bound = b.log_bound;
  }
  CHECK(prev_g < 1.0);
}

TEST_CASE("example rates") {
  CHECK(example1_rate(16, 0.492, 6.0 / 7.0, 0.5).first > 0.0);
  CHECK(example1_rate(16, 0.43, 6.0 / 7.0, 0.5).second > 0.0);
  for (double x : {0.02, 0.2, 0.45}) {
    const auto k = example2_rate(500, 1, x, 0.6, 0.5);
    CHECK(k.first > 0.0);
    CHECK(k.second > 0.0);
  }
  const auto k39 = example2_rate(39, 1, 0.30, 0.6, 0.5);
  CHECK(k39.first > 0.0);
  CHECK(k39.second > 0.0);
  CHECK(entropy_pair(1e-12) > -1e-9);
  CHECK(std::abs(entropy_pair(1e-12)) < 1e-9);
  CHECK_THROWS_AS(example1_rate(16, 0.5, 0.5, 0.5), Error);
  CHECK_THROWS_AS(example2_rate(16, 1, 0.5, 0.5, 0.5), Error);
  CHECK_THROWS_AS(example3_rate(16, 1, 0.34, 0.5, 0.5), Error);
}

TEST_CASE("example 2 zero sets") {
  for (int branch : {1, 2}) {
    const RootSet z = example2_zeros(branch, 500, 1, 0.6, 0.5);
    REQUIRE(z.found());
    for (double root : z.roots) {
      auto f = [&](double x) {
        const auto k = example2_rate(500, 1, x, 0.6, 0.5);
        return branch == 1 ? k.first : k.second;
      };
      const double step = 1e-7;
      CHECK(f(root - step) * f(root + step) <= 0.0);
    }
  }
  // Branch 1 positive on roughly (0.0155, 0.460).
  const RootSet z1 = example2_zeros(1, 500, 1, 0.6, 0.5);
  REQUIRE(z1.positive_intervals.size() == 1);
  CHECK(z1.positive_intervals[0].first == doctest::Approx(0.0155).epsilon(0.01));
  CHECK(z1.positive_intervals[0].second == doctest::Approx(0.460).epsilon(0.01));
}

TEST_CASE("example 3 thresholds") {
  CHECK(example3_h(1.0) == doctest::Approx(3.0 / ((std::sqrt(3.0) + 1) * (std::sqrt(3.0) + 1))));
  const auto x2 = example3_x2(100, 1, 0.6);
  REQUIRE(x2.has_value());
  CHECK(*x2 > 0.15);
  CHECK(*x2 < 0.16);
  // At m_2 the root sits at the right end of the interval.
  const double m2 = example3_m2(1, 0.6);
  const auto at = example3_x2(m2 * 1.0001, 1, 0.6);
  REQUIRE(at.has_value());
  CHECK(*at == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  CHECK_FALSE(example3_x2(m2 * 0.9, 1, 0.6).has_value());
  // The g branch is positive above x_1 once m > m_1.
  const double m1 = example3_m1(1, 0.6, 0.5);
  CHECK(example3_x1(m1, 1, 0.6, 0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(example3_x1(2 * m1, 1, 0.6, 0.5) < 1.0 / 3.0);
}

TEST_CASE("root scan and bisection") {
  const RootSet r = scan_roots([](double x) { return std::sin(x); }, 1.0, 10.0);
  REQUIRE(r.roots.size() == 3);
  CHECK(r.roots[0] == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(r.roots[2] == doctest::Approx(3 * std::numbers::pi).epsilon(1e-12));
  CHECK(r.positive_intervals.size() == 2);
  CHECK_FALSE(scan_roots([](double x) { return x * x + 1; }, -1, 1).found());
  CHECK(bisect([](double x) { return x * x - 2; }, 0, 2, 1e-14) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(bisect([](double x) { return x * x + 2; }, 0, 2, 1e-14), Error);
}

TEST_CASE("z(sigma) and eps(rho)") {
  CHECK(std::abs(z_sigma(0.75) - std::exp(1.0)) < 1e-10);
  CHECK(eps_rho(0.0) == 1.0);
  CHECK(eps_rho(1.0) == doctest::Approx(2.0 / (1 + std::sqrt(1 + 16 * (std::sqrt(2.0) + 1)))));
  double prev = INFINITY;
  for (double s = 0.01; s < 0.99; s += 0.01) {
    const double z = z_sigma(s);
    CHECK(z < prev);
    CHECK(z > 1.0);
    const double target = 1.0 / (1.0 / std::sqrt(1 - s) - 1.0);
    CHECK(cap_rate(z) == doctest::Approx(target).epsilon(1e-10));
    prev = z;
  }
  // z(sigma) sigma log(1/sigma) / 2 approaches 1 monotonically.
  double prev_gap = INFINITY;
  for (int k = 2; k <= 6; ++k) {
    const double s = std::pow(10.0, -k);
    const double ratio = z_sigma(s) * s * std::log(1 / s) / 2;
    const double gap = std::abs(ratio - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("connect probability") {
  CHECK(connect_probability(1, 1) == 1.0);
  CHECK(connect_probability(2, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(connect_probability(3, 1) == doctest::Approx(8.0 / 15.0));
  CHECK(connect_probability_exact(3, 1) == Rational(8, 15));
  CHECK(connected_g1_exact(2) == doctest::Approx(2.0 / 3.0));
  const double p = connected_g1_exact(10000);
  CHECK(std::abs(p / (0.5 * std::sqrt(std::numbers::pi / 10000)) - 1) < 0.02);
  for (auto [n, m] : {std::pair{10u, 1u}, std::pair{100u, 2u}, std::pair{50u, 3u}, std::pair{1000u, 2u}}) {
    CHECK(connect_probability(n, m) == doctest::Approx(static_cast<double>(oracle::connect_product(n, m))).epsilon(1e-12));
  }
  for (auto [n, m] : {std::pair{4u, 2u}, std::pair{3u, 3u}, std::pair{8u, 1u}}) {
    CHECK(connect_probability(n, m) == doctest::Approx(to_double(connect_probability_exact(n, m))).epsilon(1e-14));
  }
}

TEST_CASE("beta mixture components and moments") {
  const BetaMixture one = beta_mixture(1);
  REQUIRE(one.components().size() == 1);
  CHECK(one.components()[0].alpha == 1.0);
  CHECK(one.components()[0].beta == 0.5);
  CHECK(one.mean() == doctest::Approx(2.0 / 3.0));
  CHECK(beta_mixture(2).mean() == doctest::Approx(4.0 / 15.0));
  for (std::uint32_t r : {1u, 2u, 5u}) {
    const BetaMixture base = beta_mixture(r);
    const BetaMixture zero = beta_mixture(r, 0.0);
    REQUIRE(base.components().size() == zero.components().size());
    for (std::size_t i = 0; i < base.components().size(); ++i) {
      CHECK(base.components()[i].weight == doctest::Approx(zero.components()[i].weight));
      CHECK(base.components()[i].alpha == doctest::Approx(zero.components()[i].alpha));
      CHECK(base.components()[i].beta == doctest::Approx(zero.components()[i].beta));
    }
    for (unsigned l = 1; l <= 6; ++l) {
      const double w_loop = 1.0 / (2.0 * r - 1);
      CHECK(base.moment(l) ==
            doctest::Approx(w_loop * looped_root_moment(r, l) + (1 - w_loop) * attached_root_moment(r, l)));
      double ref = 0.0;
      for (const auto& c : base.components()) ref += c.weight * oracle::beta_moment_lgamma(c.alpha, c.beta, l);
      CHECK(base.moment(l) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(beta_mixture(0), Error);
  CHECK_THROWS_AS(beta_mixture(2, -1.5), Error);
}

TEST_CASE("extended mixture parameters") {
  for (double d : {-0.5, 1.0, 3.0}) {
    const BetaMixture law = beta_mixture(3, d);
    const double q = (1 + d) / (2 + d);
    REQUIRE(law.components().size() == 2);
    CHECK(law.components()[0].weight == doctest::Approx((1 + d) / ((2 + d) * 3 - 1)));
    CHECK(law.components()[0].alpha == 1.0);
    CHECK(law.components()[0].beta == doctest::Approx(2 + q));
    CHECK(law.components()[1].weight == doctest::Approx((2 + d) * 2 / ((2 + d) * 3 - 1)));
    CHECK(law.components()[1].alpha == doctest::Approx(q));
    CHECK(law.components()[1].beta == 3.0);
  }
}

TEST_CASE("mixture pdf integrates to 1 and reproduces the moments") {
  for (std::uint32_t r : {1u, 2u, 5u}) {
    for (std::optional<double> d : {std::optional<double>{}, std::optional<double>{1.0}}) {
      const BetaMixture law = beta_mixture(r, d);
      // Tanh-sinh handles the algebraic singularities at both ends.
      boost::math::quadrature::tanh_sinh<double> quad;
      auto integral = [&](auto g) { return quad.integrate(g, 0.0, 1.0, 1e-12); };
      CHECK(integral([&](double x) { return law.pdf(x); }) == doctest::Approx(1.0).epsilon(1e-8));
      for (unsigned l = 1; l <= 6; ++l) {
        CHECK(integral([&](double x) { return std::pow(x, l) * law.pdf(x); }) ==
              doctest::Approx(law.moment(l)).epsilon(1e-8));
      }
      CHECK(law.cdf(0.0) == 0.0);
      CHECK(law.cdf(1.0) == doctest::Approx(1.0));
      CHECK(law.cdf(0.3) == doctest::Approx(quad.integrate([&](double x) { return law.pdf(x); }, 0.0, 0.3, 1e-12)).epsilon(1e-9));
    }
  }
}

TEST_CASE("Kantorovich-Schweitzer inequality") {
  const std::vector<double> w = {0.2, 0.3, 0.5};
  const std::vector<double> same = {2.0, 2.0, 2.0};
  const auto eq = kantorovich_schweitzer(w, same, 1.0, 3.0);
  CHECK(eq.lhs == doctest::Approx(1.0));
  CHECK(eq.holds());
  const auto tight = kantorovich_schweitzer(w, same, 2.0, 2.0);
  CHECK(tight.rhs == doctest::Approx(1.0));
  CHECK(tight.lhs == doctest::Approx(1.0));
  const std::vector<double> outside = {0.5, 2.0, 2.0};
  CHECK_THROWS_AS(kantorovich_schweitzer(w, outside, 1.0, 3.0), Error);

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100000; ++trial) {
    const std::size_t k = 1 + gen() % 6;
    const double lo = 0.01 + u(gen), hi = lo + 5 * u(gen);
    std::vector<double> weights(k), values(k);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      weights[i] = u(gen);
      total += weights[i];
      values[i] = lo + (hi - lo) * u(gen);
    }
    for (auto& x : weights) x /= total;
    REQUIRE(kantorovich_schweitzer(weights, values, lo, hi).holds());
  }
}

}  // TEST_SUITE
