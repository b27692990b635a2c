#ifndef BRPA_GENERATORS_HPP_
#define BRPA_GENERATORS_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "brpa/chord_diagram.hpp"
#include "brpa/multigraph.hpp"
#include "brpa/random.hpp"

namespace brpa {

/// Unit-mean exponentials w_1..w_count and their prefix sums W_0 = 0, W_1,
/// ..., W_count. Prefix sums use Neumaier compensation, so each W_j is the
/// correctly rounded value of the exact partial sum up to one ulp.
class ExponentialProcess {
 public:
  /// Wraps given increments. Throws invalid-argument if any is not positive
  /// or if rounding would make W non-increasing.
  static ExponentialProcess from_increments(std::vector<double> w);

  std::size_t count() const { return w_.size(); }
  /// w_i, 1 <= i <= count.
  double increment(std::size_t i) const { return w_[i - 1]; }
  /// W_j, 0 <= j <= count.
  double prefix(std::size_t j) const { return W_[j]; }
  const std::vector<double>& increments() const { return w_; }
  const std::vector<double>& prefixes() const { return W_; }

 private:
  friend ExponentialProcess sample_exponential_process(std::size_t, Rng&);
  std::vector<double> w_;
  std::vector<double> W_;
};

/// Draws `count` exponentials in stream order. A draw that would not raise W
/// by more than a few ulps is redrawn, keeping W strictly increasing.
ExponentialProcess sample_exponential_process(std::size_t count, Rng& rng);

enum class GenMethod { kSequential, kUniformCoords, kUniformMatching, kExponential };

std::string_view method_name(GenMethod method);  // seq|uniform|matching|exp
std::optional<GenMethod> method_from_name(std::string_view name);

struct ExponentialPairing {
  ChordDiagram diagram;
  ExponentialProcess process;
};

/// Chords k = 1..N get right end R_k = W_k / W_{N+1} and left end
/// R_k * U_k^2, with U_1..U_N drawn after the process. N = mn.
ExponentialPairing pairing_from_exponential(std::uint32_t n, std::uint32_t m,
                                            Rng& rng);
/// Same construction on a supplied process of length >= N+1.
ChordDiagram pairing_given_process(const ExponentialProcess& process,
                                   std::size_t chords, Rng& rng);

/// Pairs 2N i.i.d. uniforms as (X_1,X_2),(X_3,X_4),... and ranks them.
ChordDiagram pairing_from_uniform(std::uint32_t n, std::uint32_t m, Rng& rng);

/// Discrete uniform matching: the smallest free point takes a uniformly
/// chosen free partner.
ChordDiagram pairing_from_matching(std::uint32_t n, std::uint32_t m, Rng& rng);

/// Edge-by-edge growth of the one-edge-per-vertex process on mn vertices,
/// then m-block collapse. With `delta`, vertex t+1 joins i in [t] with weight
/// deg(i) + delta and loops with weight 1 + delta (m = 1 only, delta >= -1).
MultiGraph graph_sequential(std::uint32_t n, std::uint32_t m, Rng& rng,
                            std::optional<double> delta = std::nullopt);

/// A sampled graph plus the latent process when the method has one.
struct Sample {
  MultiGraph graph;
  std::optional<ExponentialProcess> process;
};

/// Samples G_m^n by `method`. The exponential method locates left endpoints
/// directly among the right endpoints instead of sorting the diagram; its
/// graph equals phi_collapsed(pairing_from_exponential(...)) for the same
/// stream except when two left endpoints coincide in floating point.
Sample generate(std::uint32_t n, std::uint32_t m, GenMethod method, Rng& rng,
                std::optional<double> delta = std::nullopt);

}  // namespace brpa

#endif  // BRPA_GENERATORS_HPP_
