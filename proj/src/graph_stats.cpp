#include "brpa/graph_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "brpa/error.hpp"

namespace brpa {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x < y) std::swap(x, y);
    parent_[x] = y;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<char> membership(const MultiGraph& g, std::span<const Vertex> set) {
  std::vector<char> in(std::size_t{g.n()} + 1, 0);
  for (Vertex v : set) {
    require(v >= 1 && v <= g.n(), "vertex set: vertex out of range");
    in[v] = 1;
  }
  return in;
}

}  // namespace

std::uint64_t loop_count(const MultiGraph& g) {
  std::uint64_t total = 0;
  for (Vertex j = 1; j <= g.n(); ++j) total += g.loops_at(j);
  return total;
}

std::uint64_t parallel_pair_count(const MultiGraph& g) {
  std::uint64_t total = 0;
  for (Vertex a = 1; a <= g.n(); ++a) {
    const auto nbr = g.upper_neighbors(a);
    const auto mult = g.upper_multiplicities(a);
    for (std::size_t i = 0; i < nbr.size(); ++i) {
      if (nbr[i] == a) continue;
      const std::uint64_t k = mult[i];
      total += k * (k - 1) / 2;
    }
  }
  return total;
}

bool is_connected(const MultiGraph& g) {
  DisjointSets sets(std::size_t{g.n()} + 1);
  std::uint32_t components = g.n();
  for (Vertex a = 1; a <= g.n(); ++a) {
    for (Vertex b : g.upper_neighbors(a)) {
      if (sets.unite(a, b)) --components;
    }
  }
  return components == 1;
}

std::uint64_t prefix_length(std::uint32_t n, double a) {
  // The nudge keeps exact powers such as 10000^0.5 from flooring to 99.
  const double raw = std::pow(static_cast<double>(n), a) * (1.0 + 1e-12);
  return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(raw), 1, n);
}

std::uint64_t min_prefix_degree(const MultiGraph& g, double a) {
  require(a > 0.0 && a < 1.0, "min prefix degree: need 0 < a < 1");
  const std::uint64_t last = prefix_length(g.n(), a);
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t j = 1; j <= last; ++j) {
    best = std::min(best, g.degree(static_cast<Vertex>(j)));
  }
  return best;
}

DegreeReport degree_report(const MultiGraph& g,
                           const ExponentialProcess* process, double a) {
  if (process == nullptr) {
    fail(ErrorCode::kUnsupportedMethod,
         "degree report: needs the latent exponential process");
  }
  const std::uint32_t n = g.n();
  const std::uint32_t m = g.m();
  require(a > 0.0 && a < static_cast<double>(m) / (m + 2),
          "degree report: need 0 < a < m/(m+2)");
  require(process->count() == std::size_t{m} * n + 1,
          "degree report: process length must be mn+1");

  DegreeReport r;
  r.prefix_length = prefix_length(n, a);
  r.degree.resize(r.prefix_length);
  r.approximation.resize(r.prefix_length);
  const double scale = 2.0 * std::sqrt(static_cast<double>(m) * n);
  double l1 = 0.0;
  r.min_prefix_degree = UINT64_MAX;
  for (std::uint64_t j = 1; j <= r.prefix_length; ++j) {
    const double hi = process->prefix(m * j);
    const double lo = process->prefix(m * (j - 1));
    // sqrt(hi) - sqrt(lo) without cancellation.
    const double approx = scale * (hi - lo) / (std::sqrt(hi) + std::sqrt(lo));
    const std::uint64_t d = g.degree(static_cast<Vertex>(j));
    r.degree[j - 1] = d;
    r.approximation[j - 1] = approx;
    l1 += std::abs(static_cast<double>(d) - approx);
    r.min_prefix_degree = std::min(r.min_prefix_degree, d);
  }
  r.l1_statistic = l1 / std::sqrt(static_cast<double>(n));
  return r;
}

double min_degree_threshold(std::uint32_t n, std::uint32_t m, double a) {
  require(m >= 1 && a > 0.0 && a < static_cast<double>(m) / (m + 2),
          "degree threshold: need 0 < a < m/(m+2)");
  const double eps = static_cast<double>(m) / (m + 2) - a;
  return std::pow(static_cast<double>(n), eps * (m + 2) / (2.0 * m));
}

std::uint64_t degree_cap_violations(const MultiGraph& g, double sigma,
                                    double z, double a) {
  require(sigma > 0.0 && sigma < 1.0, "degree caps: sigma must lie in (0,1)");
  require(z > 1.0, "degree caps: z must exceed 1");
  require(a > 0.0 && a < 1.0, "degree caps: a must lie in (0,1)");
  const std::uint32_t n = g.n();
  const std::uint64_t first = prefix_length(n, a);
  const auto last =
      static_cast<std::uint64_t>(std::floor((1.0 - sigma) * static_cast<double>(n)));
  const double log_n = std::log(static_cast<double>(n));
  std::uint64_t count = 0;
  for (std::uint64_t j = first; j <= last; ++j) {
    const double cap =
        z * (std::sqrt(static_cast<double>(n) / static_cast<double>(j)) - 1.0) *
        log_n;
    if (static_cast<double>(g.degree(static_cast<Vertex>(j))) > cap) ++count;
  }
  return count;
}

std::vector<Vertex> outside_neighbors(const MultiGraph& g,
                                      std::span<const Vertex> S) {
  const auto in = membership(g, S);
  std::vector<char> hit(std::size_t{g.n()} + 1, 0);
  for (Vertex a = 1; a <= g.n(); ++a) {
    for (Vertex b : g.upper_neighbors(a)) {
      if (in[a] && !in[b]) hit[b] = 1;
      if (in[b] && !in[a]) hit[a] = 1;
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (hit[v]) out.push_back(v);
  }
  return out;
}

bool expansion_check(const MultiGraph& g, std::span<const Vertex> S,
                     double rho) {
  require(rho >= 0.0, "expansion: rate must be nonnegative");
  const auto in = membership(g, S);
  const auto size = std::count(in.begin(), in.end(), 1);
  const auto outside = outside_neighbors(g, S).size();
  return static_cast<double>(outside) >= rho * static_cast<double>(size);
}

bool isolated_pair_check(const MultiGraph& g, std::span<const Vertex> A,
                         std::span<const Vertex> B) {
  const auto in_a = membership(g, A);
  const auto in_b = membership(g, B);
  for (Vertex v = 1; v <= g.n(); ++v) {
    require(!(in_a[v] && in_b[v]), "isolated pair: sets must be disjoint");
  }
  for (Vertex a = 1; a <= g.n(); ++a) {
    for (Vertex b : g.upper_neighbors(a)) {
      if ((in_a[a] && in_b[b]) || (in_b[a] && in_a[b])) return false;
    }
  }
  return true;
}

}  // namespace brpa
