#include "brpa/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>

#include "brpa/error.hpp"

namespace brpa {

namespace {

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log Gamma(x+1) - ((x+1/2) log x - x + log(2 pi)/2), x >= 10.
double stirling_tail(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 / 1680)));
}

}  // namespace

// ---- tail inequalities ----------------------------------------------------

double poisson_rate(double x) {
  require(x >= -1.0 && std::isfinite(x), "poisson rate: need x >= -1");
  if (x == -1.0) return 1.0;
  return (1.0 + x) * std::log1p(x) - x;
}

double gamma_rate(double z) {
  require(z > 0.0 && std::isfinite(z), "gamma rate: need z > 0");
  return z - std::log(z) - 1.0;
}

double chernoff(ChernoffKind kind, const ChernoffParams& p) {
  switch (kind) {
    case ChernoffKind::kBernoulliLower:
      require(p.mu > 0.0 && p.t > 0.0 && finite_all({p.mu, p.t}),
              "chernoff C1: need mu > 0 and t > 0");
      return std::exp(-p.t * p.t / (2.0 * p.mu));
    case ChernoffKind::kBernoulliTwoSided:
      require(p.mu > 0.0 && p.eps > 0.0 && p.eps <= 1.5 && std::isfinite(p.mu),
              "chernoff C3: need mu > 0 and 0 < eps <= 3/2");
      return 2.0 * std::exp(-p.eps * p.eps * p.mu / 3.0);
    case ChernoffKind::kPoissonizedUpper:
      require(p.mu > 0.0 && p.t >= 0.0 && finite_all({p.mu, p.t}),
              "chernoff upper: need mu > 0 and t >= 0");
      return std::exp(-p.mu * poisson_rate(p.t / p.mu));
    case ChernoffKind::kPoissonizedLower:
      require(p.mu > 0.0 && p.t >= 0.0 && p.t <= p.mu && std::isfinite(p.mu),
              "chernoff lower: need mu > 0 and 0 <= t <= mu");
      return std::exp(-p.mu * poisson_rate(-p.t / p.mu));
    case ChernoffKind::kGammaUpper:
      require(p.nu > 0.0 && p.alpha > 1.0 && finite_all({p.nu, p.alpha}),
              "chernoff C4: need nu > 0 and alpha > 1");
      return std::exp(-p.nu * gamma_rate(p.alpha));
    case ChernoffKind::kGammaLower:
      require(p.nu > 0.0 && p.alpha > 0.0 && p.alpha < 1.0 && std::isfinite(p.nu),
              "chernoff C4': need nu > 0 and 0 < alpha < 1");
      return std::exp(-p.nu * gamma_rate(p.alpha));
    case ChernoffKind::kWeightedLower: {
      require(p.alpha > 0.0 && p.alpha < 1.0, "chernoff C5: need 0 < alpha < 1");
      double s1 = 0.0;
      double s2 = 0.0;
      for (double d : p.weights) {
        require(d >= 0.0 && std::isfinite(d), "chernoff C5: weights must be >= 0");
        s1 += d;
        s2 += d * d;
      }
      require(s2 > 0.0, "chernoff C5: need a positive weight");
      return std::exp(-0.5 * p.alpha * p.alpha * s1 * s1 / s2);
    }
  }
  fail(ErrorCode::kInvalidArgument, "chernoff: unknown kind");
}

// ---- isolation bounds -------------------------------------------------------

double psi(double j) {
  require(j >= 0.0 && std::isfinite(j), "psi: need j >= 0");
  return 2.0 / (std::sqrt(j + 1.0) + std::sqrt(j));
}

double h_pair(double mu, double nu, double n) {
  // Real-valued up to mu + nu = N; the n = 99, mu = nu = 50 case sits there.
  require(mu >= 0.0 && nu >= 0.0 && mu + nu <= n + 1.0 && finite_all({mu, nu, n}),
          "h: need mu, nu >= 0 and mu + nu <= n + 1");
  const double N = n + 1.0;
  // Each factor is a difference of square roots; rewrite as a quotient.
  const double first = mu / (std::sqrt(N - nu) + std::sqrt(N - mu - nu));
  const double second = nu / (std::sqrt(N) + std::sqrt(N - nu));
  return 4.0 * first * second;
}

double g_min(double mu, double nu, double n) {
  return std::min(h_pair(mu, nu, n), h_pair(nu, mu, n));
}

double log_binomial(double n, double k) {
  require(n >= 0.0 && k >= 0.0 && k <= n && n == std::floor(n) &&
              k == std::floor(k) && n < 9.0e15,
          "log binomial: need integers 0 <= k <= n");
  const double small = std::min(k, n - k);
  if (small == 0.0) return 0.0;
  if (small < 32.0) {
    double sum = 0.0;
    for (double i = 1.0; i <= small; i += 1.0) sum += std::log((n - small + i) / i);
    return sum;
  }
  const double large = n - small;
  // n log n - s log s - l log l without cancellation, plus Stirling terms.
  const double main = small * std::log(n / small) - large * std::log1p(-small / n);
  const double half = 0.5 * std::log(n / (2.0 * std::numbers::pi * small * large));
  return main + half + stirling_tail(n) - stirling_tail(small) - stirling_tail(large);
}

SwapTerms swap_terms(double mu, double nu, double r, double n) {
  require(r >= 0.0 && r <= mu && mu <= nu && mu + nu <= n && finite_all({mu, nu, r, n}),
          "swap terms: need 0 <= r <= mu <= nu and mu + nu <= n");
  const double N = n + 1.0;
  const double a = std::sqrt(N - mu);
  const double a_minus = std::sqrt(N - mu - r);
  const double a_plus = std::sqrt(N - mu + r);
  const double c_plus = std::sqrt(N - mu - nu + r);
  const double c = std::sqrt(N - mu - nu);
  const double top = std::sqrt(N);
  const double top_minus = std::sqrt(N - r);
  SwapTerms s;
  s.X_r = 2.0 * (2.0 * a - a_minus - a_plus);
  s.x_2 = 2.0 * (c_plus - c - top + top_minus);
  s.D = a_minus + a_plus - c_plus - top_minus;
  s.d1 = 4.0 * (2.0 * a - a_minus - a_plus) * (a_minus - c - top + a_plus);
  s.d2 = 4.0 * (c_plus - c - top + top_minus) * (2.0 * a - c_plus - top_minus);
  s.d = s.D >= 0.0 ? s.d1 : s.d2;
  return s;
}

double g_refined(double mu, double nu, double r, double n) {
  return g_min(mu, nu, n) + swap_terms(mu, nu, r, n).d;
}

IsolationBound pair_isolation_bound(const IsolationBoundParams& p) {
  require(p.n >= 2 && p.m >= 1, "isolation bound: need n >= 2, m >= 1");
  require(p.mu >= 1 && p.nu >= 1 && p.mu + p.nu <= p.n,
          "isolation bound: need mu, nu >= 1 and mu + nu <= n");
  require(p.eps > 0.0 && p.eps < 1.0, "isolation bound: eps must lie in (0,1)");
  require(p.c > 0.0 && std::isfinite(p.c), "isolation bound: c must be positive");
  const double n = static_cast<double>(p.n);
  const double mu = static_cast<double>(p.mu);
  const double nu = static_cast<double>(p.nu);
  const double implied = 1.0 - (mu + nu) / n;
  double delta = implied;
  if (p.delta) {
    delta = *p.delta;
    require(std::abs((1.0 - delta) * n - (mu + nu)) <= 1e-6 * std::max(1.0, n),
            "isolation bound: delta inconsistent with mu + nu = (1 - delta) n");
  }
  require(delta >= 1e-6 && delta < 1.0,
          "isolation bound: delta must be at least 1e-6");

  IsolationBound b;
  b.delta = delta;
  const double sd = std::sqrt(delta);
  b.spread_coeff = 2.0 * p.eps * p.eps * sd / ((1.0 + sd) * (1.0 + sd));
  b.spread_exponent = b.spread_coeff * mu * nu / (mu + nu);
  const double m = static_cast<double>(p.m);
  const double log_choose_union = log_binomial(n, mu + nu);
  if (!p.r) {
    b.g_exponent = p.c * (1.0 - p.eps) * g_min(mu, nu, n);
    b.log_count = std::log(2.0) + log_choose_union + log_binomial(mu + nu, mu);
    b.log_bound = b.log_count - m * std::min(b.spread_exponent, b.g_exponent);
  } else {
    const double r = static_cast<double>(*p.r);
    require(*p.r <= p.mu && p.mu <= p.nu,
            "isolation bound: refinement needs r <= mu <= nu");
    b.g_exponent = p.c * (1.0 - p.eps) * g_refined(mu, nu, r, n);
    b.log_count = log_choose_union + log_binomial(mu, r) + log_binomial(nu, r);
    b.log_bound = b.log_count + log_sum_exp(-m * b.spread_exponent, -m * b.g_exponent);
  }
  b.bound = std::exp(b.log_bound);
  b.spread_rate_per_vertex = (m * b.spread_exponent - b.log_count) / n;
  b.g_rate_per_vertex = (m * b.g_exponent - b.log_count) / n;
  return b;
}

// ---- example rate functions -----------------------------------------------

namespace {

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

void check_rate_args(double m, double eps, double c) {
  require(m > 0.0 && std::isfinite(m), "rate: m must be positive");
  require(eps > 0.0 && eps < 1.0, "rate: eps must lie in (0,1)");
  require(c > 0.0 && std::isfinite(c), "rate: c must be positive");
}

// Scaled h and g of example 2.
double h_unit(double x, double y) {
  return 4.0 * (std::sqrt(1.0 - x) - std::sqrt(1.0 - x - y)) * (1.0 - std::sqrt(1.0 - y));
}

double g_unit(double x, double y) { return std::min(h_unit(x, y), h_unit(y, x)); }

}  // namespace

double entropy_pair(double beta) {
  require(beta > 0.0 && beta < 0.5, "entropy: beta must lie in (0, 1/2)");
  return 2.0 * xlogx(beta) + xlogx(1.0 - 2.0 * beta);
}

RatePair example1_rate(double m, double beta, double eps, double c) {
  check_rate_args(m, eps, c);
  const double I = entropy_pair(beta);
  const double s1 = std::sqrt(1.0 - beta);
  const double s2 = std::sqrt(1.0 - 2.0 * beta);
  const double j1 = I + m * 4.0 * c * (1.0 - eps) * (s1 - s2) * (1.0 - s1);
  const double j2 = I + m * eps * eps * beta * s2 / ((1.0 + s2) * (1.0 + s2));
  return {j1, j2};
}

RatePair example2_rate(double m, double rho, double x, double eps, double c) {
  check_rate_args(m, eps, c);
  require(rho > 0.0 && std::isfinite(rho), "example 2: rho must be positive");
  require(x > 0.0 && x < 1.0 / (1.0 + rho), "example 2: x must lie in (0, 1/(1+rho))");
  const double y = 1.0 - (1.0 + rho) * x;
  const double H = xlogx(rho * x) + xlogx(x) + xlogx(y);
  const double k1 = H + m * c * (1.0 - eps) * g_unit(x, y);
  const double s = std::sqrt(x * rho);
  const double k2 = H + m * 2.0 * eps * eps * s / ((1.0 + s) * (1.0 + s)) * x * y / (1.0 - x * rho);
  return {k1, k2};
}

RatePair example3_rate(double m, double gamma, double x, double eps, double c) {
  check_rate_args(m, eps, c);
  require(gamma > 0.0 && std::isfinite(gamma), "example 3: gamma must be positive");
  require(x > 0.0 && x <= 1.0 / (gamma + 2.0) * (1.0 + 1e-15),
          "example 3: x must lie in (0, 1/(gamma+2)]");
  const double y = 1.0 - x * (gamma + 1.0);
  const double H = xlogx(gamma * x) + xlogx(x) + xlogx(y);
  const double s1 = std::sqrt(1.0 - x);
  const double sg = std::sqrt(gamma * x);
  const double k1 = H + m * 4.0 * c * (1.0 - eps) * (s1 - sg) * (1.0 - s1);
  const double k2 = H + m * 2.0 * eps * eps * sg / ((1.0 + sg) * (1.0 + sg)) * x * y / (1.0 - gamma * x);
  return {k1, k2};
}

double example3_h(double gamma) {
  require(gamma > 0.0 && std::isfinite(gamma), "example 3: gamma must be positive");
  const double a = std::sqrt(gamma + 2.0);
  const double b = std::sqrt(gamma);
  return (gamma + 2.0) * b / ((a + b) * (a + b));
}

double example3_x1(double m, double gamma, double eps, double c) {
  check_rate_args(m, eps, c);
  require(gamma > 0.0, "example 3: gamma must be positive");
  const double gap = std::sqrt(gamma + 1.0) - std::sqrt(gamma);
  return std::exp((gamma + 1.0 - gamma * std::log(gamma)) / (gamma + 1.0)) *
         std::exp(-2.0 * m * c * (1.0 - eps) * gap / ((gamma + 1.0) * std::sqrt(gamma + 2.0)));
}

double example3_m1(double gamma, double eps, double c) {
  check_rate_args(1.0, eps, c);
  require(gamma > 0.0, "example 3: gamma must be positive");
  const double gap = std::sqrt(gamma + 1.0) - std::sqrt(gamma);
  return (gamma + 1.0 - gamma * std::log(gamma) + (gamma + 1.0) * std::log(gamma + 2.0)) *
         std::sqrt(gamma + 2.0) / (2.0 * c * (1.0 - eps) * gap);
}

namespace {

double x2_lhs(double x, double gamma) {
  return std::log(std::exp(1.0) / (x * gamma)) / std::sqrt(x);
}

}  // namespace

double example3_m2(double gamma, double eps) {
  check_rate_args(1.0, eps, 1.0);
  require(gamma > 0.0, "example 3: gamma must be positive");
  return (gamma + 1.0) / (eps * eps * example3_h(gamma)) * x2_lhs(1.0 / (gamma + 2.0), gamma);
}

// ---- root finding -----------------------------------------------------------

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tolerance) {
  double flo = f(lo);
  const double fhi = f(hi);
  require(!(flo > 0 && fhi > 0) && !(flo < 0 && fhi < 0),
          "bisect: endpoints must bracket a sign change");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tolerance * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi) {
      return mid;
    }
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RootSet scan_roots(const std::function<double(double)>& f, double lo, double hi,
                   const RootScanOptions& options) {
  require(lo < hi && finite_all({lo, hi}), "root scan: need lo < hi");
  require(options.grid_points >= 2, "root scan: need at least 2 grid points");
  require(options.tolerance > 0.0, "root scan: tolerance must be positive");
  const std::size_t g = options.grid_points;
  RootSet out;
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) out.roots.push_back(lo);
  for (std::size_t i = 1; i < g; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(g - 1);
    const double fx = f(x);
    if (fx == 0.0) {
      out.roots.push_back(x);
    } else if (f_prev != 0.0 && ((fx < 0) != (f_prev < 0))) {
      out.roots.push_back(bisect(f, x_prev, x, options.tolerance));
    }
    x_prev = x;
    f_prev = fx;
  }
  std::vector<double> cuts;
  cuts.push_back(lo);
  cuts.insert(cuts.end(), out.roots.begin(), out.roots.end());
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    if (f(0.5 * (cuts[i] + cuts[i + 1])) > 0.0) {
      if (!out.positive_intervals.empty() && out.positive_intervals.back().second == cuts[i] &&
          f(cuts[i]) > 0.0) {
        out.positive_intervals.back().second = cuts[i + 1];
      } else {
        out.positive_intervals.emplace_back(cuts[i], cuts[i + 1]);
      }
    }
  }
  return out;
}

RootSet example2_zeros(int branch, double m, double rho, double eps, double c,
                       const RootScanOptions& options) {
  require(branch == 1 || branch == 2, "example 2: branch must be 1 or 2");
  check_rate_args(m, eps, c);
  require(rho > 0.0, "example 2: rho must be positive");
  const double top = 1.0 / (1.0 + rho);
  // Open interval: stay a hair inside both ends.
  const double pad = top * 1e-9;
  auto f = [=](double x) {
    const auto k = example2_rate(m, rho, x, eps, c);
    return branch == 1 ? k.first : k.second;
  };
  return scan_roots(f, pad, top - pad, options);
}

std::optional<double> example3_x2(double m, double gamma, double eps,
                                  const RootScanOptions& options) {
  check_rate_args(m, eps, 1.0);
  require(gamma > 0.0, "example 3: gamma must be positive");
  const double target = m * eps * eps * example3_h(gamma) / (gamma + 1.0);
  const double top = 1.0 / (gamma + 2.0);
  auto f = [=](double x) { return x2_lhs(x, gamma) - target; };
  const RootSet roots = scan_roots(f, top * 1e-9, top, options);
  if (!roots.found()) return std::nullopt;
  return roots.roots.front();
}

double cap_rate(double z) {
  require(z > 0.0 && std::isfinite(z), "cap rate: need z > 0");
  return z * std::log(z) + 1.0 - z;
}

double z_sigma(double sigma) {
  require(sigma > 0.0 && sigma < 1.0, "z(sigma): sigma must lie in (0,1)");
  const double s = std::sqrt(1.0 - sigma);
  // (1 - sigma)^{-1/2} - 1 written without cancellation.
  const double lhs = sigma / (s * (1.0 + s));
  const double target = 1.0 / lhs;
  auto f = [target](double z) { return cap_rate(z) - target; };
  double hi = 2.0;
  while (f(hi) <= 0.0) hi *= 2.0;
  return bisect(f, 1.0, hi, 1e-15);
}

double eps_rho(double rho) {
  require(rho >= 0.0 && std::isfinite(rho), "eps(rho): rho must be >= 0");
  return 2.0 / (1.0 + std::sqrt(1.0 + 16.0 * (std::sqrt(rho * (rho + 1.0)) + rho)));
}

// ---- products and limit laws -------------------------------------------------

double connect_probability(std::uint32_t n, std::uint32_t m) {
  require(n >= 1 && m >= 1, "connect probability: need n, m >= 1");
  double log_p = 0.0;
  for (std::uint32_t j = 2; j <= n; ++j) {
    double q = 1.0;
    const double base = 2.0 * (j - 1.0) * m;
    for (std::uint32_t k = 0; k < m; ++k) q *= (2.0 * k + 1.0) / (base + 2.0 * k + 1.0);
    log_p += std::log1p(-q);
  }
  return std::exp(log_p);
}

Rational connect_probability_exact(std::uint32_t n, std::uint32_t m) {
  require(n >= 1 && m >= 1, "connect probability: need n, m >= 1");
  BigInt num = 1;
  BigInt den = 1;
  for (std::uint32_t j = 2; j <= n; ++j) {
    BigInt qn = 1;
    BigInt qd = 1;
    const std::uint64_t base = 2ull * (j - 1) * m;
    for (std::uint64_t k = 0; k < m; ++k) {
      qn *= 2 * k + 1;
      qd *= base + 2 * k + 1;
    }
    num *= qd - qn;
    den *= qd;
  }
  return Rational(num, den);
}

double connected_g1_exact(std::uint32_t n) { return connect_probability(n, 1); }

BetaMixture::BetaMixture(std::vector<BetaComponent> components)
    : components_(std::move(components)) {
  require(!components_.empty(), "beta mixture: need a component");
  double total = 0.0;
  for (const auto& c : components_) {
    require(c.weight > 0.0 && c.alpha > 0.0 && c.beta > 0.0 &&
                finite_all({c.weight, c.alpha, c.beta}),
            "beta mixture: weights and shapes must be positive");
    total += c.weight;
  }
  require(std::abs(total - 1.0) < 1e-12, "beta mixture: weights must sum to 1");
}

double BetaMixture::pdf(double x) const {
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  double sum = 0.0;
  for (const auto& c : components_) {
    sum += c.weight * boost::math::ibeta_derivative(c.alpha, c.beta, x);
  }
  return sum;
}

double BetaMixture::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double sum = 0.0;
  for (const auto& c : components_) sum += c.weight * boost::math::ibeta(c.alpha, c.beta, x);
  return sum;
}

double beta_moment(double alpha, double beta, unsigned l) {
  require(alpha > 0.0 && beta > 0.0, "beta moment: shapes must be positive");
  double product = 1.0;
  for (unsigned j = 0; j < l; ++j) product *= (alpha + j) / (alpha + beta + j);
  return product;
}

double BetaMixture::moment(unsigned l) const {
  double sum = 0.0;
  for (const auto& c : components_) sum += c.weight * beta_moment(c.alpha, c.beta, l);
  return sum;
}

BetaMixture beta_mixture(std::uint32_t r, std::optional<double> delta) {
  require(r >= 1, "beta mixture: r must be at least 1");
  const double rr = static_cast<double>(r);
  std::vector<BetaComponent> parts;
  if (!delta) {
    parts.push_back({1.0 / (2.0 * rr - 1.0), 1.0, rr - 0.5});
    parts.push_back({2.0 * (rr - 1.0) / (2.0 * rr - 1.0), 0.5, rr});
  } else {
    const double d = *delta;
    require(d > -1.0 && std::isfinite(d),
            "beta mixture: delta must exceed -1 (the law degenerates at -1)");
    const double kappa = (1.0 + d) / (2.0 + d);
    const double den = (2.0 + d) * rr - 1.0;
    parts.push_back({(1.0 + d) / den, 1.0, rr - 1.0 + kappa});
    parts.push_back({(2.0 + d) * (rr - 1.0) / den, kappa, rr});
  }
  std::erase_if(parts, [](const BetaComponent& c) { return c.weight == 0.0; });
  return BetaMixture(std::move(parts));
}

double looped_root_moment(std::uint32_t r, unsigned l) {
  require(r >= 1, "moment: r must be at least 1");
  double value = 1.0;
  for (unsigned j = 0; j < l; ++j) {
    value *= 2.0 * (j + 1.0) / (2.0 * (r + j) + 1.0);
  }
  return value;
}

double attached_root_moment(std::uint32_t r, unsigned l) {
  require(r >= 1, "moment: r must be at least 1");
  double value = 1.0;
  for (unsigned j = 0; j < l; ++j) {
    value *= (2.0 * j + 1.0) / (2.0 * (r + j) + 1.0);
  }
  return value;
}

KantorovichResult kantorovich_schweitzer(std::span<const double> weights,
                                         std::span<const double> values,
                                         double lo, double hi) {
  require(weights.size() == values.size() && !weights.empty(),
          "kantorovich: weights and values must have equal, nonzero length");
  require(lo > 0.0 && lo <= hi && std::isfinite(hi), "kantorovich: need 0 < lo <= hi");
  double total = 0.0;
  double mean = 0.0;
  double inverse_mean = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    require(weights[i] >= 0.0, "kantorovich: weights must be nonnegative");
    require(values[i] >= lo && values[i] <= hi, "kantorovich: value outside [lo, hi]");
    total += weights[i];
    mean += weights[i] * values[i];
    inverse_mean += weights[i] / values[i];
  }
  require(std::abs(total - 1.0) < 1e-9, "kantorovich: weights must sum to 1");
  return {mean * inverse_mean, (hi + lo) * (hi + lo) / (4.0 * hi * lo)};
}

}  // namespace brpa
