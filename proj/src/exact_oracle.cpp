#include "brpa/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "brpa/graph_stats.hpp"
#include "brpa/maxtree.hpp"

namespace brpa {

std::uint64_t double_factorial_odd(std::uint32_t N) {
  require(N <= 30, "double factorial: N too large");
  std::uint64_t value = 1;
  for (std::uint64_t k = 3; k <= 2ull * N - 1; k += 2) value *= k;
  return value;
}

namespace {

constexpr ExactStatistic kAllStatistics[] = {
    ExactStatistic::kLoopCount,        ExactStatistic::kDegreeSequence,
    ExactStatistic::kLoopsAndDegrees,  ExactStatistic::kConnected,
    ExactStatistic::kSpanningRecursive, ExactStatistic::kMaxTreeSizes,
    ExactStatistic::kParallelPairs,    ExactStatistic::kPrefixMaxtree,
};

std::string join_degrees(const MultiGraph& g) {
  std::string out;
  for (Vertex j = 1; j <= g.n(); ++j) {
    if (j > 1) out += ',';
    out += std::to_string(g.degree(j));
  }
  return out;
}

}  // namespace

std::string_view statistic_name(ExactStatistic s) {
  switch (s) {
    case ExactStatistic::kLoopCount: return "loop_count";
    case ExactStatistic::kDegreeSequence: return "degree_sequence";
    case ExactStatistic::kLoopsAndDegrees: return "loops_and_degrees";
    case ExactStatistic::kConnected: return "connected";
    case ExactStatistic::kSpanningRecursive: return "spanning_recursive";
    case ExactStatistic::kMaxTreeSizes: return "max_tree_sizes";
    case ExactStatistic::kParallelPairs: return "parallel_pairs";
    case ExactStatistic::kPrefixMaxtree: return "prefix_maxtree";
  }
  return "?";
}

std::optional<ExactStatistic> statistic_from_name(std::string_view name) {
  for (auto s : kAllStatistics) {
    if (statistic_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string outcome_key(ExactStatistic s, const MultiGraph& g, std::uint32_t mu) {
  switch (s) {
    case ExactStatistic::kLoopCount: return std::to_string(loop_count(g));
    case ExactStatistic::kDegreeSequence: return join_degrees(g);
    case ExactStatistic::kLoopsAndDegrees:
      return std::to_string(loop_count(g)) + ";" + join_degrees(g);
    case ExactStatistic::kConnected: return is_connected(g) ? "1" : "0";
    case ExactStatistic::kSpanningRecursive:
      return spanning_recursive_exists(g) ? "1" : "0";
    case ExactStatistic::kMaxTreeSizes: {
      auto sizes = forest_m1(g).sizes;
      std::sort(sizes.rbegin(), sizes.rend());
      std::string out;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sizes[i]);
      }
      return out;
    }
    case ExactStatistic::kParallelPairs: return std::to_string(parallel_pair_count(g));
    case ExactStatistic::kPrefixMaxtree:
      return prefix_maxtree_present(g, mu) ? "1" : "0";
  }
  fail(ErrorCode::kInvalidArgument, "unknown statistic");
}

Rational ExactDistribution::probability(const std::string& key) const {
  const auto it = counts.find(key);
  if (it == counts.end() || total == 0) return Rational(0);
  return Rational(BigInt(it->second), BigInt(total));
}

Rational ExactDistribution::mean() const {
  require(total > 0, "exact distribution: empty");
  BigInt sum = 0;
  for (const auto& [key, count] : counts) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == key.size() && !key.empty(),
            "exact distribution: mean needs integer outcomes");
    sum += BigInt(value) * BigInt(count);
  }
  return Rational(sum, BigInt(total));
}

ExactDistribution exact_distribution(std::uint32_t n, std::uint32_t m,
                                     ExactStatistic s, std::uint32_t mu) {
  require(n >= 1 && m >= 1, "exact distribution: need n, m >= 1");
  const std::uint64_t chords = std::uint64_t{n} * m;
  if (chords > kMaxEnumeratedChords) {
    fail(ErrorCode::kResourceLimit, "exact distribution: needs mn <= 9");
  }
  if (s == ExactStatistic::kMaxTreeSizes && m != 1) {
    fail(ErrorCode::kUnsupportedMethod, "max-tree sizes need m = 1");
  }
  require(s != ExactStatistic::kPrefixMaxtree || mu <= n,
          "exact distribution: mu must not exceed n");
  ExactDistribution d;
  d.statistic = std::string(statistic_name(s));
  d.n = n;
  d.m = m;
  for_each_pairing(static_cast<std::uint32_t>(chords),
                   [&](std::span<const std::uint32_t> partner) {
                     const MultiGraph g = phi_collapsed(partner, m);
                     ++d.counts[outcome_key(s, g, mu)];
                     ++d.total;
                   });
  return d;
}

std::uint64_t stirling_s(std::uint32_t l, std::uint32_t k) {
  if (l > 20) fail(ErrorCode::kResourceLimit, "stirling: l above 20 overflows");
  require(k <= l, "stirling: need k <= l");
  // s(i, j) = s(i-1, j-1) + (i-1) s(i-1, j).
  std::vector<std::uint64_t> row(l + 1, 0);
  row[0] = 1;
  for (std::uint32_t i = 1; i <= l; ++i) {
    for (std::uint32_t j = i; j >= 1; --j) row[j] = row[j - 1] + (i - 1) * row[j];
    row[0] = 0;
  }
  return row[k];
}

StirlingCheck stirling_identity_check(std::uint32_t l, std::uint32_t k) {
  require(k >= 1 && k <= l, "stirling identity: need 1 <= k <= l");
  auto choose = [](std::uint32_t a, std::uint32_t b) -> __int128 {
    if (b > a) return 0;
    __int128 value = 1;
    for (std::uint32_t i = 1; i <= b; ++i) value = value * (a - b + i) / i;
    return value;
  };
  StirlingCheck c{0, 0};
  for (std::uint32_t j = k; j <= l; ++j) {
    c.lhs += static_cast<__int128>(stirling_s(l, j)) * choose(j, k - 1);
  }
  c.rhs = static_cast<__int128>(l) * stirling_s(l, k);
  return c;
}

namespace {

// Visits every recursive tree on [nu] as its in-degree vector.
void for_each_recursive_tree(std::uint32_t nu,
                             const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  if (nu > 8) fail(ErrorCode::kResourceLimit, "recursive trees: nu above 8");
  require(nu >= 1, "recursive trees: nu must be at least 1");
  std::vector<std::uint32_t> indeg(nu, 0);
  std::function<void(std::uint32_t)> attach = [&](std::uint32_t v) {
    if (v > nu) {
      fn(indeg);
      return;
    }
    for (std::uint32_t p = 1; p < v; ++p) {
      ++indeg[p - 1];
      attach(v + 1);
      --indeg[p - 1];
    }
  };
  attach(2);
}

template <typename T>
void gf_sides(std::uint32_t nu, std::span<const T> z, T& lhs, T& rhs,
              std::uint64_t& trees) {
  require(z.size() + 1 >= nu, "recursive trees: need z_1..z_{nu-1}");
  lhs = T(0);
  trees = 0;
  for_each_recursive_tree(nu, [&](const std::vector<std::uint32_t>& indeg) {
    T term(1);
    for (std::uint32_t i = 0; i + 1 < nu; ++i) {
      for (std::uint32_t e = 0; e < indeg[i]; ++e) term *= z[i];
    }
    lhs += term;
    ++trees;
  });
  rhs = T(1);
  T prefix(0);
  for (std::uint32_t j = 0; j + 1 < nu; ++j) {
    prefix += z[j];
    rhs *= prefix;
  }
}

}  // namespace

TreeGfCheck recursive_tree_gf_check(std::uint32_t nu, std::span<const Rational> z) {
  TreeGfCheck c;
  gf_sides<Rational>(nu, z, c.lhs, c.rhs, c.trees);
  return c;
}

TreeGfCheckReal recursive_tree_gf_check(std::uint32_t nu, std::span<const double> z) {
  TreeGfCheckReal c{0.0, 0.0, 0};
  gf_sides<double>(nu, z, c.lhs, c.rhs, c.trees);
  return c;
}

bool TreeGfCheckReal::holds(double tol) const {
  return std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(rhs));
}

MartingaleCheck martingale_step_check(std::uint64_t X, std::uint64_t t,
                                      std::uint64_t r, unsigned l, bool shifted) {
  require(r >= 1 && r <= t, "martingale step: need 1 <= r <= t");
  require(X >= 1 && X <= t, "martingale step: need 1 <= X <= t");
  require(l <= 6, "martingale step: order above 6");
  const Rational value = shifted ? Rational(BigInt(2 * X - 1), BigInt(2)) : Rational(BigInt(X));
  auto rising = [l](const Rational& x) {
    Rational product(1);
    for (unsigned j = 0; j < l; ++j) product *= x + Rational(BigInt(j));
    return product;
  };
  const Rational grow = Rational(2) * value / Rational(BigInt(2 * t + 1));
  MartingaleCheck c;
  c.expected = grow * rising(value + Rational(1)) + (Rational(1) - grow) * rising(value);
  c.predicted = Rational(BigInt(2 * (t + l) + 1), BigInt(2 * t + 1)) * rising(value);
  return c;
}

}  // namespace brpa
