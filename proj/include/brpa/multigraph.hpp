#ifndef BRPA_MULTIGRAPH_HPP_
#define BRPA_MULTIGRAPH_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "brpa/chord_diagram.hpp"

namespace brpa {

using Vertex = std::uint32_t;

/// One stored edge class: endpoints a <= b and how many parallel copies.
struct WeightedEdge {
  Vertex a;
  Vertex b;
  std::uint32_t multiplicity;
};

/// Loop- and multiplicity-aware multigraph on vertices 1..n carrying the
/// block parameter m. Total edge multiplicity is always m*n. Immutable.
///
/// Storage is a CSR table keyed by the smaller endpoint; each bucket is
/// sorted by the larger endpoint, so a loop at v is the first entry of v's
/// bucket when present.
class MultiGraph {
 public:
  /// Builds from unit edges (one entry per copy), endpoints in any order.
  static MultiGraph from_pairs(std::uint32_t n, std::uint32_t m,
                               std::span<const std::pair<Vertex, Vertex>> pairs);
  /// Builds from edge classes. Repeated classes are merged.
  static MultiGraph from_weighted(std::uint32_t n, std::uint32_t m,
                                  std::span<const WeightedEdge> edges);

  std::uint32_t n() const { return n_; }
  std::uint32_t m() const { return m_; }
  std::uint64_t edge_count() const { return std::uint64_t{m_} * n_; }

  std::uint64_t degree(Vertex j) const;
  std::uint32_t loops_at(Vertex j) const;
  std::uint32_t multiplicity(Vertex a, Vertex b) const;
  bool has_edge(Vertex a, Vertex b) const { return multiplicity(a, b) > 0; }

  /// Degree table indexed 0..n-1 (vertex j at j-1), loops counted twice.
  std::span<const std::uint64_t> degrees() const { return degree_; }

  /// Edge classes whose smaller endpoint is a, sorted by larger endpoint.
  /// `upper_neighbors(a)[i]` pairs with `upper_multiplicities(a)[i]`.
  std::span<const Vertex> upper_neighbors(Vertex a) const;
  std::span<const std::uint32_t> upper_multiplicities(Vertex a) const;

  /// All edge classes in (a, b) order.
  std::vector<WeightedEdge> edges() const;

  friend bool operator==(const MultiGraph& x, const MultiGraph& y) {
    return x.n_ == y.n_ && x.m_ == y.m_ && x.offsets_ == y.offsets_ &&
           x.nbr_ == y.nbr_ && x.mult_ == y.mult_;
  }

 private:
  MultiGraph() = default;
  void check_vertex(Vertex j) const;
  void finish();

  std::uint32_t n_ = 0;
  std::uint32_t m_ = 0;
  std::vector<std::uint64_t> offsets_;  // size n+1
  std::vector<Vertex> nbr_;
  std::vector<std::uint32_t> mult_;
  std::vector<std::uint64_t> degree_;
  std::vector<std::uint32_t> loops_;
};

/// Vertex (1-based, in the one-edge-per-vertex graph) containing each point
/// of a matching: points are cut after every right endpoint.
std::vector<Vertex> point_vertices(std::span<const std::uint32_t> partner);

/// The graph of a linearized chord diagram (m = 1).
MultiGraph phi(const ChordDiagram& d);
/// phi followed by collapse(., m), without materializing the m = 1 graph.
/// `partner` must be a perfect matching of 1..2mn.
MultiGraph phi_collapsed(std::span<const std::uint32_t> partner,
                         std::uint32_t m);

/// Merges consecutive m-blocks of a graph with m = 1.
MultiGraph collapse(const MultiGraph& g1, std::uint32_t m);

}  // namespace brpa

#endif  // BRPA_MULTIGRAPH_HPP_
