#ifndef BRPA_GOF_HPP_
#define BRPA_GOF_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace brpa {

/// Kolmogorov limit survival function Q(x) = 2 sum (-1)^{k-1} exp(-2k^2x^2).
double kolmogorov_q(double x);

struct KsResult {
  double statistic;  // sup |F_n - F|
  double p_value;    // asymptotic, with the Stephens small-sample correction
};

/// One-sample KS against a continuous CDF; needs >= 30 samples.
KsResult ks_test(std::span<const double> samples,
                 const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic;
  double p_value;
  std::uint64_t degrees_of_freedom;
  double total_variation;  // half the L1 gap between empirical and exact laws
  std::uint64_t pooled_cells;  // cells merged into the remainder bin
};

/// Pearson test of observed counts against exact probabilities. Cells with
/// expected count < min_expected are pooled into one bin. Throws
/// invalid-argument if some observed outcome has exact probability 0 or is
/// missing from `expected`.
ChiSquareResult chi_square(const std::map<std::string, std::uint64_t>& observed,
                           const std::map<std::string, double>& expected,
                           double min_expected = 5.0);

struct LinearFit {
  double slope;
  double intercept;
  double slope_stderr;
  double band_low;   // slope +- t_{0.975, k-2} * stderr
  double band_high;
};

/// Least squares y = slope x + intercept; needs >= 3 distinct x (the
/// harness asks for >= 4).
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Upper tail of chi-square with k degrees of freedom.
double chi_square_sf(double x, double k);

}  // namespace brpa

#endif  // BRPA_GOF_HPP_
