#ifndef BRPA_GRAPH_STATS_HPP_
#define BRPA_GRAPH_STATS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "brpa/generators.hpp"
#include "brpa/multigraph.hpp"

namespace brpa {

/// Total number of loops.
std::uint64_t loop_count(const MultiGraph& g);

/// Unordered pairs of parallel non-loop edges: sum of C(mult, 2).
std::uint64_t parallel_pair_count(const MultiGraph& g);

bool is_connected(const MultiGraph& g);

/// Degrees of the first j_n = floor(n^a) vertices against the process
/// increments 2 sqrt(mn) (sqrt(W_{mj}) - sqrt(W_{m(j-1)})).
struct DegreeReport {
  std::uint64_t prefix_length = 0;   // j_n
  std::vector<std::uint64_t> degree;  // D(1..j_n)
  std::vector<double> approximation;  // matching increments
  double l1_statistic = 0.0;          // n^{-1/2} * sum |D - approximation|
  std::uint64_t min_prefix_degree = 0;
};

/// Throws unsupported-method when `process` is null, invalid-argument unless
/// 0 < a < m/(m+2) and the process has mn+1 terms.
DegreeReport degree_report(const MultiGraph& g,
                           const ExponentialProcess* process, double a);

/// floor(n^a), at least 1.
std::uint64_t prefix_length(std::uint32_t n, double a);

/// min over j <= floor(n^a) of D(j); no process needed.
std::uint64_t min_prefix_degree(const MultiGraph& g, double a);

/// The whp lower level for prefix degrees: n^{eps (m+2) / (2m)} with
/// eps = m/(m+2) - a.
double min_degree_threshold(std::uint32_t n, std::uint32_t m, double a);

/// Number of j in [floor(n^a), floor((1-sigma) n)] whose degree exceeds
/// z (sqrt(n/j) - 1) log n.
std::uint64_t degree_cap_violations(const MultiGraph& g, double sigma,
                                    double z, double a);

/// Vertices outside S adjacent to some vertex of S, ascending.
std::vector<Vertex> outside_neighbors(const MultiGraph& g,
                                      std::span<const Vertex> S);

/// |N(S)| >= rho |S|.
bool expansion_check(const MultiGraph& g, std::span<const Vertex> S,
                     double rho);

/// True iff no edge joins A and B. A and B must be disjoint.
bool isolated_pair_check(const MultiGraph& g, std::span<const Vertex> A,
                         std::span<const Vertex> B);

}  // namespace brpa

#endif  // BRPA_GRAPH_STATS_HPP_
