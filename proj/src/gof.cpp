#include "brpa/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "brpa/error.hpp"

namespace brpa {

double kolmogorov_q(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.0) {
    // Theta-function form; converges fast for small x.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      sum += std::exp(-odd * odd * pi2 / (8.0 * x * x));
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples,
                 const std::function<double(double)>& cdf) {
  require(samples.size() >= 30, "ks test: need at least 30 samples");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  const double root = std::sqrt(n);
  return {d, kolmogorov_q((root + 0.12 + 0.11 / root) * d)};
}

double chi_square_sf(double x, double k) {
  require(k > 0.0, "chi-square: degrees of freedom must be positive");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * k, 0.5 * x);
}

ChiSquareResult chi_square(const std::map<std::string, std::uint64_t>& observed,
                           const std::map<std::string, double>& expected,
                           double min_expected) {
  std::uint64_t total = 0;
  for (const auto& [key, count] : observed) {
    const auto it = expected.find(key);
    require(it != expected.end() && it->second > 0.0,
            "chi-square: observed outcome '" + key + "' has zero exact probability");
    total += count;
  }
  require(total > 0, "chi-square: no observations");
  const double n = static_cast<double>(total);
  ChiSquareResult r{0.0, 1.0, 0, 0.0, 0};
  double pooled_expected = 0.0;
  double pooled_observed = 0.0;
  std::uint64_t bins = 0;
  double l1 = 0.0;
  for (const auto& [key, p] : expected) {
    const auto it = observed.find(key);
    const double o = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    l1 += std::abs(o / n - p);
    const double e = n * p;
    if (e < min_expected) {
      pooled_expected += e;
      pooled_observed += o;
      ++r.pooled_cells;
      continue;
    }
    r.statistic += (o - e) * (o - e) / e;
    ++bins;
  }
  if (r.pooled_cells > 0 && pooled_expected > 0.0) {
    r.statistic += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) /
                   pooled_expected;
    ++bins;
  }
  r.total_variation = 0.5 * l1;
  r.degrees_of_freedom = bins > 1 ? bins - 1 : 0;
  r.p_value = r.degrees_of_freedom == 0
                  ? 1.0
                  : chi_square_sf(r.statistic, static_cast<double>(r.degrees_of_freedom));
  return r;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 3, "fit: need at least 3 points");
  const double k = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, "fit: x values must not all coincide");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    sse += e * e;
  }
  f.slope_stderr = std::sqrt(sse / (k - 2.0) / sxx);
  const boost::math::students_t t_dist(k - 2.0);
  const double t = boost::math::quantile(boost::math::complement(t_dist, 0.025));
  f.band_low = f.slope - t * f.slope_stderr;
  f.band_high = f.slope + t * f.slope_stderr;
  return f;
}

}  // namespace brpa
