#include "brpa/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "brpa/error.hpp"

namespace brpa {

namespace {

void check_shape(std::uint32_t n, std::uint32_t m) {
  require(n >= 1, "graph: n must be at least 1");
  require(m >= 1, "graph: m must be at least 1");
  require(std::uint64_t{n} * m <= 0xFFFFFFFFull, "graph: m*n too large");
}

}  // namespace

MultiGraph MultiGraph::from_pairs(
    std::uint32_t n, std::uint32_t m,
    std::span<const std::pair<Vertex, Vertex>> pairs) {
  check_shape(n, m);
  require(pairs.size() == std::uint64_t{m} * n,
          "graph: edge count must equal m*n");
  // Counting sort by smaller endpoint; bucket v spans [start[v-1], start[v]).
  std::vector<std::uint64_t> start(std::size_t{n} + 1, 0);
  for (const auto& [x, y] : pairs) {
    require(x >= 1 && x <= n && y >= 1 && y <= n,
            "graph: edge endpoint out of range");
    ++start[std::min(x, y)];
  }
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::uint64_t> cursor(start.begin(), start.end() - 1);
  std::vector<Vertex> larger(pairs.size());
  for (const auto& [x, y] : pairs) {
    larger[cursor[std::min(x, y) - 1]++] = std::max(x, y);
  }

  MultiGraph g;
  g.n_ = n;
  g.m_ = m;
  g.offsets_.assign(std::size_t{n} + 1, 0);
  g.nbr_.reserve(pairs.size());
  g.mult_.reserve(pairs.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto first = larger.begin() + static_cast<std::ptrdiff_t>(start[v]);
    auto last = larger.begin() + static_cast<std::ptrdiff_t>(start[v + 1]);
    if (!std::is_sorted(first, last)) std::sort(first, last);
    for (auto it = first; it != last; ++it) {
      if (g.nbr_.size() > g.offsets_[v] && g.nbr_.back() == *it) {
        ++g.mult_.back();
      } else {
        g.nbr_.push_back(*it);
        g.mult_.push_back(1);
      }
    }
    g.offsets_[v + 1] = g.nbr_.size();
  }
  g.finish();
  return g;
}

MultiGraph MultiGraph::from_weighted(std::uint32_t n, std::uint32_t m,
                                     std::span<const WeightedEdge> edges) {
  check_shape(n, m);
  std::vector<WeightedEdge> sorted(edges.begin(), edges.end());
  std::uint64_t total = 0;
  for (auto& e : sorted) {
    require(e.a >= 1 && e.a <= n && e.b >= 1 && e.b <= n,
            "graph: edge endpoint out of range");
    require(e.multiplicity >= 1, "graph: multiplicity must be positive");
    if (e.a > e.b) std::swap(e.a, e.b);
    total += e.multiplicity;
  }
  require(total == std::uint64_t{m} * n, "graph: edge count must equal m*n");
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });

  MultiGraph g;
  g.n_ = n;
  g.m_ = m;
  g.offsets_.assign(std::size_t{n} + 1, 0);
  std::size_t i = 0;
  for (Vertex v = 1; v <= n; ++v) {
    while (i < sorted.size() && sorted[i].a == v) {
      if (g.nbr_.size() > g.offsets_[v - 1] && g.nbr_.back() == sorted[i].b) {
        g.mult_.back() += sorted[i].multiplicity;
      } else {
        g.nbr_.push_back(sorted[i].b);
        g.mult_.push_back(sorted[i].multiplicity);
      }
      ++i;
    }
    g.offsets_[v] = g.nbr_.size();
  }
  g.finish();
  return g;
}

void MultiGraph::finish() {
  degree_.assign(n_, 0);
  loops_.assign(n_, 0);
  for (Vertex a = 1; a <= n_; ++a) {
    for (std::uint64_t e = offsets_[a - 1]; e < offsets_[a]; ++e) {
      const Vertex b = nbr_[e];
      const std::uint32_t k = mult_[e];
      if (b == a) {
        loops_[a - 1] = k;
        degree_[a - 1] += 2ull * k;
      } else {
        degree_[a - 1] += k;
        degree_[b - 1] += k;
      }
    }
  }
}

void MultiGraph::check_vertex(Vertex j) const {
  if (j < 1 || j > n_) {
    fail(ErrorCode::kInvalidArgument,
         "graph: vertex " + std::to_string(j) + " outside 1.." +
             std::to_string(n_));
  }
}

std::uint64_t MultiGraph::degree(Vertex j) const {
  check_vertex(j);
  return degree_[j - 1];
}

std::uint32_t MultiGraph::loops_at(Vertex j) const {
  check_vertex(j);
  return loops_[j - 1];
}

std::uint32_t MultiGraph::multiplicity(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  if (a > b) std::swap(a, b);
  const auto first = nbr_.begin() + static_cast<std::ptrdiff_t>(offsets_[a - 1]);
  const auto last = nbr_.begin() + static_cast<std::ptrdiff_t>(offsets_[a]);
  const auto it = std::lower_bound(first, last, b);
  if (it == last || *it != b) return 0;
  return mult_[static_cast<std::size_t>(it - nbr_.begin())];
}

std::span<const Vertex> MultiGraph::upper_neighbors(Vertex a) const {
  check_vertex(a);
  return std::span<const Vertex>(nbr_).subspan(
      offsets_[a - 1], offsets_[a] - offsets_[a - 1]);
}

std::span<const std::uint32_t> MultiGraph::upper_multiplicities(
    Vertex a) const {
  check_vertex(a);
  return std::span<const std::uint32_t>(mult_).subspan(
      offsets_[a - 1], offsets_[a] - offsets_[a - 1]);
}

std::vector<WeightedEdge> MultiGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(nbr_.size());
  for (Vertex a = 1; a <= n_; ++a) {
    for (std::uint64_t e = offsets_[a - 1]; e < offsets_[a]; ++e) {
      out.push_back({a, nbr_[e], mult_[e]});
    }
  }
  return out;
}

std::vector<Vertex> point_vertices(std::span<const std::uint32_t> partner) {
  std::vector<Vertex> vertex(partner.size());
  Vertex current = 1;
  for (std::size_t i = 0; i < partner.size(); ++i) {
    vertex[i] = current;
    if (partner[i] < i + 1) ++current;  // right endpoint closes the vertex
  }
  return vertex;
}

MultiGraph phi_collapsed(std::span<const std::uint32_t> partner,
                         std::uint32_t m) {
  require(is_perfect_matching(partner),
          "phi: partner list is not a perfect matching");
  const std::size_t chords = partner.size() / 2;
  require(m >= 1 && chords % m == 0, "phi: chord count not divisible by m");
  const auto vertex = point_vertices(partner);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(chords);
  for (std::size_t i = 0; i < partner.size(); ++i) {
    const std::uint32_t q = partner[i];
    if (q < i + 1) {
      pairs.emplace_back((vertex[q - 1] - 1) / m + 1, (vertex[i] - 1) / m + 1);
    }
  }
  return MultiGraph::from_pairs(static_cast<std::uint32_t>(chords / m), m,
                                pairs);
}

MultiGraph phi(const ChordDiagram& d) { return phi_collapsed(d.partners(), 1); }

MultiGraph collapse(const MultiGraph& g1, std::uint32_t m) {
  if (g1.m() != 1) {
    fail(ErrorCode::kInvalidArgument, "collapse: input must have m = 1");
  }
  require(m >= 1 && g1.n() % m == 0, "collapse: n not divisible by m");
  std::vector<WeightedEdge> edges = g1.edges();
  for (auto& e : edges) {
    e.a = (e.a - 1) / m + 1;
    e.b = (e.b - 1) / m + 1;
  }
  return MultiGraph::from_weighted(g1.n() / m, m, edges);
}

}  // namespace brpa
