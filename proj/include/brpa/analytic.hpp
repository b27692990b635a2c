#ifndef BRPA_ANALYTIC_HPP_
#define BRPA_ANALYTIC_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "brpa/rational.hpp"

namespace brpa {

// ---- tail inequalities ----------------------------------------------------

enum class ChernoffKind {
  kBernoulliLower,     // P(X <= mu - t) <= exp(-t^2 / 2mu)
  kBernoulliTwoSided,  // P(|X - mu| >= eps mu) <= 2 exp(-eps^2 mu / 3)
  kPoissonizedUpper,   // P(X >= mu + t) <= exp(-mu rate(t/mu)); also for
                       // negatively associated indicators with mu >= E X
  kPoissonizedLower,   // P(X <= mu - t) <= exp(-mu rate(-t/mu))
  kGammaUpper,         // P(W_nu >= alpha nu) <= exp(-nu gamma_rate(alpha))
  kGammaLower,         // P(W_nu <= alpha nu) <= exp(-nu gamma_rate(alpha))
  kWeightedLower,      // P(sum d w <= (1-alpha) sum d) <= exp(-alpha^2 S1^2 / 2 S2)
};

struct ChernoffParams {
  double mu = 0.0;
  double t = 0.0;
  double eps = 0.0;
  double nu = 0.0;
  double alpha = 0.0;
  std::vector<double> weights;  // d_k for kWeightedLower
};

/// (1+x) log(1+x) - x for x >= -1.
double poisson_rate(double x);
/// z - log z - 1 for z > 0.
double gamma_rate(double z);

/// Right-hand side of the selected bound. Throws invalid-argument outside
/// the bound's domain.
double chernoff(ChernoffKind kind, const ChernoffParams& p);

// ---- isolation bounds -------------------------------------------------------

/// 2 (sqrt(j+1) - sqrt(j)).
double psi(double j);
/// 4 (sqrt(N-nu) - sqrt(N-mu-nu)) (sqrt(N) - sqrt(N-nu)), N = n + 1.
double h_pair(double mu, double nu, double n);
/// min(h(mu,nu), h(nu,mu)).
double g_min(double mu, double nu, double n);

/// log C(n, k) via lgamma.
double log_binomial(double n, double k);

struct IsolationBoundParams {
  std::uint64_t n = 0;
  std::uint32_t m = 1;
  std::uint64_t mu = 0;
  std::uint64_t nu = 0;
  double eps = 0.5;
  std::optional<double> delta;  // derived as 1 - (mu+nu)/n when absent
  double c = 0.5;
  std::optional<std::uint64_t> r;  // swap count for the refinement
};

/// Pieces of the refinement for mu <= nu.
struct SwapTerms {
  double X_r;  // min over swaps
  double x_2;  // max over swaps
  double D;    // sign selects the minimizer
  double d1;
  double d2;
  double d;    // d1 when D >= 0, else d2
};
SwapTerms swap_terms(double mu, double nu, double r, double n);
/// g(mu, nu) + d(mu, nu, r).
double g_refined(double mu, double nu, double r, double n);

struct IsolationBound {
  double delta;         // resolved delta
  double spread_coeff;  // 2 eps^2 sqrt(delta) / (1 + sqrt(delta))^2
  double spread_exponent;  // spread_coeff * mu nu / (mu + nu)
  double g_exponent;       // c (1 - eps) g   (refined g when r is given)
  double log_count;        // log of the combinatorial prefactor
  double log_bound;        // log of the full bound
  double bound;            // exp(log_bound); may be +inf when vacuous
  /// -(log_count - m * exponent) / n for each branch alone.
  double spread_rate_per_vertex;
  double g_rate_per_vertex;
};

/// Without r: 2 C(n, mu+nu) C(mu+nu, mu) exp(-m H) with H the smaller
/// exponent. With r (needs r <= mu <= nu): C(n, mu+nu) C(mu, r) C(nu, r)
/// times the sum of both exponentials, g replaced by its refined value.
IsolationBound pair_isolation_bound(const IsolationBoundParams& p);

// ---- example rate functions -----------------------------------------------

/// I(beta) = 2 beta log beta + (1 - 2 beta) log(1 - 2 beta).
double entropy_pair(double beta);

/// Two-branch rate (first: g branch, second: spread branch).
using RatePair = std::pair<double, double>;

/// Equal halves of size beta n, beta in (0, 1/2).
RatePair example1_rate(double m, double beta, double eps, double c);
/// Expansion at rate rho, |A| = x n, x in (0, 1/(1+rho)).
RatePair example2_rate(double m, double rho, double x, double eps, double c);
/// Cut of size x n with slack gamma x, x in (0, 1/(gamma+2)].
RatePair example3_rate(double m, double gamma, double x, double eps, double c);

/// (gamma+2) sqrt(gamma) / (sqrt(gamma+2) + sqrt(gamma))^2.
double example3_h(double gamma);
/// Level above which the g branch of example 3 is positive.
double example3_x1(double m, double gamma, double eps, double c);
/// Smallest m for which example3_x1 < 1/(gamma+2).
double example3_m1(double gamma, double eps, double c);
/// Smallest m for which the spread-branch root lies inside (0, 1/(gamma+2)).
double example3_m2(double gamma, double eps);

// ---- root finding -----------------------------------------------------------

struct RootScanOptions {
  std::size_t grid_points = 10000;
  double tolerance = 1e-12;
};

/// Zeros of f on [lo, hi] found by a uniform sign scan plus bisection, and
/// the maximal subintervals between consecutive zeros where f > 0.
struct RootSet {
  std::vector<double> roots;
  std::vector<std::pair<double, double>> positive_intervals;
  bool found() const { return !roots.empty(); }
};

RootSet scan_roots(const std::function<double(double)>& f, double lo,
                   double hi, const RootScanOptions& options = {});

/// Bisection on a sign-changing bracket, to `tolerance` relative to
/// max(1, |x|).
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tolerance);

/// Zero set of one branch (1 or 2) of example 2 on (0, 1/(1+rho)).
RootSet example2_zeros(int branch, double m, double rho, double eps, double c,
                       const RootScanOptions& options = {});
/// Root of x^{-1/2} log(e/(x gamma)) = m eps^2 h(gamma)/(gamma+1) in
/// (0, 1/(gamma+2)); empty when the scan sees no sign change.
std::optional<double> example3_x2(double m, double gamma, double eps,
                                  const RootScanOptions& options = {});

/// z log z + 1 - z.
double cap_rate(double z);
/// Unique z > 1 with (1 - sigma)^{-1/2} - 1 = 1 / cap_rate(z).
double z_sigma(double sigma);
/// 2 / (1 + sqrt(1 + 16 (sqrt(rho (rho+1)) + rho))).
double eps_rho(double rho);

// ---- products and limit laws -------------------------------------------------

/// Probability that every vertex j >= 2 has at most m-1 loops.
double connect_probability(std::uint32_t n, std::uint32_t m);
Rational connect_probability_exact(std::uint32_t n, std::uint32_t m);
/// connect_probability(n, 1), the probability that G_1^n is connected.
double connected_g1_exact(std::uint32_t n);

struct BetaComponent {
  double weight;
  double alpha;
  double beta;
};

/// Two-component beta law of the scaled max-tree size of root r.
class BetaMixture {
 public:
  explicit BetaMixture(std::vector<BetaComponent> components);

  std::span<const BetaComponent> components() const { return components_; }
  double pdf(double x) const;
  double cdf(double x) const;
  /// E[Z^l] from the rising-product formula.
  double moment(unsigned l) const;
  double mean() const { return moment(1); }

 private:
  std::vector<BetaComponent> components_;
};

/// Base law for root r >= 1; with delta (> -1) the extended law. Components
/// of zero weight are dropped.
BetaMixture beta_mixture(std::uint32_t r, std::optional<double> delta = std::nullopt);

/// l-th limit moment of the scaled tree of a looped root r.
double looped_root_moment(std::uint32_t r, unsigned l);
/// l-th limit moment of the scaled tree of an attached root r.
double attached_root_moment(std::uint32_t r, unsigned l);

/// Beta(alpha, beta) moment, prod_{j<l} (alpha+j)/(alpha+beta+j).
double beta_moment(double alpha, double beta, unsigned l);

struct KantorovichResult {
  double lhs;
  double rhs;
  bool holds() const { return lhs <= rhs * (1 + 1e-12); }
};

/// (sum xi x)(sum xi / x) against (hi + lo)^2 / (4 hi lo).
KantorovichResult kantorovich_schweitzer(std::span<const double> weights,
                                         std::span<const double> values,
                                         double lo, double hi);

}  // namespace brpa

#endif  // BRPA_ANALYTIC_HPP_
