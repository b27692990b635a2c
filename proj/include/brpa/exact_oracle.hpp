#ifndef BRPA_EXACT_ORACLE_HPP_
#define BRPA_EXACT_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brpa/error.hpp"
#include "brpa/multigraph.hpp"
#include "brpa/rational.hpp"

namespace brpa {

/// Largest chord count the enumerator accepts: 17!! = 34,459,425 matchings.
inline constexpr std::uint32_t kMaxEnumeratedChords = 9;

/// (2N-1)!!.
std::uint64_t double_factorial_odd(std::uint32_t N);

namespace detail {

template <typename Fn>
void extend_pairing(std::vector<std::uint32_t>& partner, std::uint32_t from,
                    Fn& fn) {
  const auto points = static_cast<std::uint32_t>(partner.size());
  while (from <= points && partner[from - 1] != 0) ++from;
  if (from > points) {
    fn(std::span<const std::uint32_t>(partner));
    return;
  }
  for (std::uint32_t q = from + 1; q <= points; ++q) {
    if (partner[q - 1] != 0) continue;
    partner[from - 1] = q;
    partner[q - 1] = from;
    extend_pairing(partner, from + 1, fn);
    partner[q - 1] = 0;
  }
  partner[from - 1] = 0;
}

inline void check_chords(std::uint32_t N) {
  require(N >= 1, "enumeration: need at least one chord");
  if (N > kMaxEnumeratedChords) {
    fail(ErrorCode::kResourceLimit, "enumeration: more than 9 chords");
  }
}

}  // namespace detail

/// Calls fn(partner) for the matchings of 1..2N in which point 1 is paired
/// with point shard + 2 (0 <= shard < 2N-1), in lexicographic order of the
/// partner of the smallest free point. `partner[p-1]` is p's partner.
template <typename Fn>
void for_each_pairing_in_shard(std::uint32_t N, std::uint32_t shard, Fn&& fn) {
  detail::check_chords(N);
  require(shard < 2 * N - 1, "enumeration: shard out of range");
  std::vector<std::uint32_t> partner(2 * N, 0);
  partner[0] = shard + 2;
  partner[shard + 1] = 1;
  detail::extend_pairing(partner, 2, fn);
}

/// All (2N-1)!! matchings of 1..2N, streaming, each exactly once.
template <typename Fn>
void for_each_pairing(std::uint32_t N, Fn&& fn) {
  detail::check_chords(N);
  for (std::uint32_t shard = 0; shard + 1 < 2 * N; ++shard) {
    for_each_pairing_in_shard(N, shard, fn);
  }
}

enum class ExactStatistic {
  kLoopCount,
  kDegreeSequence,
  kLoopsAndDegrees,
  kConnected,
  kSpanningRecursive,
  kMaxTreeSizes,
  kParallelPairs,
  kPrefixMaxtree,
};

std::string_view statistic_name(ExactStatistic s);
std::optional<ExactStatistic> statistic_from_name(std::string_view name);

/// Outcome label of a graph: an integer, a comma list of degrees, "L;d1,..."
/// for loops with degrees, "0"/"1" for events, or descending tree sizes.
std::string outcome_key(ExactStatistic s, const MultiGraph& g,
                        std::uint32_t mu = 0);

/// Exact law of a statistic over all matchings, stored as counts out of
/// (2N-1)!!.
struct ExactDistribution {
  std::string statistic;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint64_t total = 0;
  std::map<std::string, std::uint64_t> counts;

  Rational probability(const std::string& key) const;
  /// Expectation of a numeric statistic (keys must parse as integers).
  Rational mean() const;
};

/// Pushes every matching of 2mn points through phi and the m-block collapse.
/// Needs mn <= 9 (resource-limit otherwise). `mu` is used by
/// kPrefixMaxtree only.
ExactDistribution exact_distribution(std::uint32_t n, std::uint32_t m,
                                     ExactStatistic s, std::uint32_t mu = 0);

/// Signless Stirling numbers of the first kind, 0 <= k <= l <= 20.
std::uint64_t stirling_s(std::uint32_t l, std::uint32_t k);

struct StirlingCheck {
  __int128 lhs;  // sum_{j=k}^{l} s(l,j) C(j,k-1)
  __int128 rhs;  // l s(l,k)
  bool holds() const { return lhs == rhs; }
};
StirlingCheck stirling_identity_check(std::uint32_t l, std::uint32_t k);

/// Sum over recursive trees on [nu] of prod z_i^{indeg(i)} against
/// prod_{j < nu} (z_1 + ... + z_j). `z` holds z_1..z_{nu-1}; nu <= 8.
struct TreeGfCheck {
  Rational lhs;
  Rational rhs;
  std::uint64_t trees = 0;
  bool holds() const { return lhs == rhs; }
};
TreeGfCheck recursive_tree_gf_check(std::uint32_t nu, std::span<const Rational> z);

struct TreeGfCheckReal {
  double lhs;
  double rhs;
  std::uint64_t trees = 0;
  bool holds(double tol = 1e-10) const;
};
TreeGfCheckReal recursive_tree_gf_check(std::uint32_t nu, std::span<const double> z);

/// One step of the size X of a max-tree at time t: it grows by one with
/// probability 2X/(2t+1). With `shifted`, Y = X - 1/2 replaces X both in the
/// rising factorial and in the growth probability.
struct MartingaleCheck {
  Rational expected;   // E[V^{(l)}(t+1) | V(t)]
  Rational predicted;  // (2(t+l)+1)/(2t+1) V^{(l)}(t)
  bool holds() const { return expected == predicted; }
};
MartingaleCheck martingale_step_check(std::uint64_t X, std::uint64_t t,
                                      std::uint64_t r, unsigned l,
                                      bool shifted = false);

}  // namespace brpa

#endif  // BRPA_EXACT_ORACLE_HPP_
