// Independent reference implementations used only by tests. Nothing here
// calls into the library's graph or analytic code.
#ifndef BRPA_TESTS_ORACLES_HPP_
#define BRPA_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

// Dense multigraph: mult[a][b] = mult[b][a] for a != b, loops on the diagonal.
struct Dense {
  unsigned n = 0;
  std::vector<std::vector<unsigned>> mult;

  explicit Dense(unsigned size) : n(size), mult(size + 1, std::vector<unsigned>(size + 1, 0)) {}

  void add(unsigned a, unsigned b) {
    if (a == b) {
      ++mult[a][a];
    } else {
      ++mult[a][b];
      ++mult[b][a];
    }
  }

  unsigned degree(unsigned v) const {
    unsigned d = 2 * mult[v][v];
    for (unsigned u = 1; u <= n; ++u) {
      if (u != v) d += mult[v][u];
    }
    return d;
  }

  unsigned loops() const {
    unsigned total = 0;
    for (unsigned v = 1; v <= n; ++v) total += mult[v][v];
    return total;
  }

  unsigned parallel_pairs() const {
    unsigned total = 0;
    for (unsigned a = 1; a <= n; ++a) {
      for (unsigned b = a + 1; b <= n; ++b) total += mult[a][b] * (mult[a][b] - (mult[a][b] > 0)) / 2;
    }
    return total;
  }

  bool connected() const {
    std::vector<bool> seen(n + 1, false);
    std::queue<unsigned> q;
    q.push(1);
    seen[1] = true;
    unsigned count = 1;
    while (!q.empty()) {
      const unsigned v = q.front();
      q.pop();
      for (unsigned u = 1; u <= n; ++u) {
        if (!seen[u] && mult[v][u] > 0) {
          seen[u] = true;
          ++count;
          q.push(u);
        }
      }
    }
    return count == n;
  }

  std::string loops_and_degrees() const {
    std::string s = std::to_string(loops()) + ";";
    for (unsigned v = 1; v <= n; ++v) s += (v > 1 ? "," : "") + std::to_string(degree(v));
    return s;
  }
};

// phi by a left-to-right sweep: a point opens a chord or closes one; the
// current vertex advances after every closing point.
inline Dense phi_dense(const std::vector<unsigned>& partner, unsigned m) {
  const unsigned points = static_cast<unsigned>(partner.size());
  std::vector<unsigned> vertex_of(points + 1, 0);
  unsigned current = 1;
  for (unsigned p = 1; p <= points; ++p) {
    vertex_of[p] = current;
    if (partner[p - 1] < p) ++current;
  }
  const unsigned n1 = points / 2;
  Dense g(n1 / m);
  for (unsigned p = 1; p <= points; ++p) {
    const unsigned q = partner[p - 1];
    if (q < p) {
      const unsigned a = (vertex_of[q] - 1) / m + 1;
      const unsigned b = (vertex_of[p] - 1) / m + 1;
      g.add(a, b);
    }
  }
  return g;
}

// All perfect matchings of 1..2N from permutations, deduplicated. Slow on
// purpose: a different route from the recursive enumerator.
inline std::set<std::vector<unsigned>> matchings_by_permutation(unsigned N) {
  std::vector<unsigned> perm(2 * N);
  std::iota(perm.begin(), perm.end(), 1u);
  std::set<std::vector<unsigned>> out;
  do {
    std::vector<unsigned> partner(2 * N);
    for (unsigned i = 0; i < N; ++i) {
      partner[perm[2 * i] - 1] = perm[2 * i + 1];
      partner[perm[2 * i + 1] - 1] = perm[2 * i];
    }
    out.insert(partner);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Exact law of a key over the sequential growth process of G_1^{mn}: vertex
// t loops with probability 1/(2t-1) and otherwise joins i with probability
// deg(i)/(2t-1); then m-blocks are merged.
template <typename KeyFn>
std::map<std::string, Q> sequential_law(unsigned n, unsigned m, KeyFn key) {
  const unsigned total = n * m;
  std::map<std::string, Q> law;
  std::vector<unsigned> deg(total + 1, 0);
  std::vector<std::pair<unsigned, unsigned>> edges;
  auto rec = [&](auto&& self, unsigned t, const Q& weight) -> void {
    if (t > total) {
      Dense g(n);
      for (auto [a, b] : edges) g.add((a - 1) / m + 1, (b - 1) / m + 1);
      law[key(g)] += weight;
      return;
    }
    const Q denom = Q(2 * t - 1);
    // loop
    deg[t] += 2;
    edges.emplace_back(t, t);
    self(self, t + 1, weight / denom);
    edges.pop_back();
    deg[t] -= 2;
    for (unsigned i = 1; i < t; ++i) {
      const Q p = Q(deg[i]) / denom;
      ++deg[i];
      ++deg[t];
      edges.emplace_back(i, t);
      self(self, t + 1, weight * p);
      edges.pop_back();
      --deg[i];
      --deg[t];
    }
  };
  rec(rec, 1, Q(1));
  return law;
}

// prod_{j=2}^n (1 - prod_{k<m} (2k+1)/(2(j-1)m+2k+1)) in long double.
inline long double connect_product(unsigned n, unsigned m) {
  long double p = 1.0L;
  for (unsigned j = 2; j <= n; ++j) {
    long double inner = 1.0L;
    for (unsigned k = 0; k < m; ++k) inner *= (2.0L * k + 1.0L) / (2.0L * (j - 1) * m + 2.0L * k + 1.0L);
    p *= 1.0L - inner;
  }
  return p;
}

// E[Beta(a,b)^l] from log-gamma ratios.
inline double beta_moment_lgamma(double a, double b, unsigned l) {
  return std::exp(std::lgamma(a + l) - std::lgamma(a) + std::lgamma(a + b) - std::lgamma(a + b + l));
}

// Beta(a,b) density.
inline double beta_pdf(double x, double a, double b) {
  return std::exp((a - 1) * std::log(x) + (b - 1) * std::log1p(-x) + std::lgamma(a + b) - std::lgamma(a) -
                  std::lgamma(b));
}

// Composite Simpson rule.
template <typename F>
double simpson(F f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// log C(n, k) from long double lgamma.
inline long double log_choose(long double n, long double k) {
  return std::lgammal(n + 1) - std::lgammal(k + 1) - std::lgammal(n - k + 1);
}

// Two-sided Kolmogorov tail by the alternating series.
inline double kolmogorov_tail(double x) {
  double s = 0.0;
  for (int k = 1; k < 1000; ++k) s += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * x * x);
  return s;
}

// Signless Stirling numbers of the first kind by counting permutations.
inline std::uint64_t stirling_by_cycles(unsigned l, unsigned k) {
  std::vector<unsigned> perm(l);
  std::iota(perm.begin(), perm.end(), 0u);
  std::uint64_t count = 0;
  do {
    std::vector<bool> seen(l, false);
    unsigned cycles = 0;
    for (unsigned i = 0; i < l; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (unsigned j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }
    count += cycles == k;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace oracle

#endif  // BRPA_TESTS_ORACLES_HPP_
