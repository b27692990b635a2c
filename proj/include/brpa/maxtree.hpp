#ifndef BRPA_MAXTREE_HPP_
#define BRPA_MAXTREE_HPP_

#include <cstdint>
#include <vector>

#include "brpa/multigraph.hpp"

namespace brpa {

/// Decomposition of a one-edge-per-vertex graph into maximal recursive
/// trees. Vectors are indexed by vertex - 1.
struct MaxTreeForest {
  std::vector<Vertex> parent;              // 0 for roots
  std::vector<Vertex> roots;               // loop vertices, ascending
  std::vector<std::uint32_t> sizes;        // component size per root
  std::vector<std::uint32_t> subtree_size;  // descendants of v, v included
  std::vector<Vertex> subtree_max;         // largest descendant of v
};

/// Throws unsupported-method unless g.m() == 1.
MaxTreeForest forest_m1(const MultiGraph& g);

/// Size of the maximal recursive tree hanging from r, divided by n (m = 1).
double scaled_root_component(const MultiGraph& g, Vertex r);
double scaled_root_component(const MaxTreeForest& forest, Vertex r);

/// Every vertex j >= 2 keeps an edge to an earlier vertex.
bool spanning_recursive_exists(const MultiGraph& g);

/// Number of b in (omega, n] adjacent to both a1 and a2.
std::uint64_t connector_count(const MultiGraph& g, Vertex a1, Vertex a2,
                              Vertex omega);
/// Minimum of connector_count over pairs a1 < a2 <= omega; needs omega >= 2.
std::uint64_t min_connector_count(const MultiGraph& g, Vertex omega);

/// Largest n accepted by the subset search used when m >= 2.
inline constexpr std::uint32_t kPrefixMaxtreeOracleLimit = 20;

/// True iff some maximal recursive tree has all its vertices in [mu]. For
/// m = 1 this reads the forest; for m >= 2 it searches all subsets of [mu]
/// and throws unsupported-method when n exceeds the oracle limit.
bool prefix_maxtree_present(const MultiGraph& g, std::uint32_t mu);

}  // namespace brpa

#endif  // BRPA_MAXTREE_HPP_
