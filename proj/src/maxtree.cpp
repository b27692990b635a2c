#include "brpa/maxtree.hpp"

#include <algorithm>

#include "brpa/error.hpp"

namespace brpa {

MaxTreeForest forest_m1(const MultiGraph& g) {
  if (g.m() != 1) {
    fail(ErrorCode::kUnsupportedMethod, "max-tree forest needs m = 1");
  }
  const std::uint32_t n = g.n();
  MaxTreeForest f;
  f.parent.assign(n, 0);
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b : g.upper_neighbors(a)) {
      if (b != a) f.parent[b - 1] = a;  // b's own chord lands in a
    }
  }
  f.subtree_size.assign(n, 1);
  f.subtree_max.resize(n);
  for (Vertex v = 1; v <= n; ++v) f.subtree_max[v - 1] = v;
  for (Vertex v = n; v >= 1; --v) {
    const Vertex p = f.parent[v - 1];
    if (p == 0) continue;
    f.subtree_size[p - 1] += f.subtree_size[v - 1];
    f.subtree_max[p - 1] = std::max(f.subtree_max[p - 1], f.subtree_max[v - 1]);
  }
  for (Vertex v = 1; v <= n; ++v) {
    if (f.parent[v - 1] == 0) {
      f.roots.push_back(v);
      f.sizes.push_back(f.subtree_size[v - 1]);
    }
  }
  return f;
}

double scaled_root_component(const MaxTreeForest& forest, Vertex r) {
  const auto n = forest.parent.size();
  require(r >= 1 && r <= n, "scaled root component: root out of range");
  return static_cast<double>(forest.subtree_size[r - 1]) /
         static_cast<double>(n);
}

double scaled_root_component(const MultiGraph& g, Vertex r) {
  require(r >= 1 && r <= g.n(), "scaled root component: root out of range");
  return scaled_root_component(forest_m1(g), r);
}

bool spanning_recursive_exists(const MultiGraph& g) {
  for (Vertex j = 2; j <= g.n(); ++j) {
    if (g.loops_at(j) >= g.m()) return false;
  }
  return true;
}

std::uint64_t connector_count(const MultiGraph& g, Vertex a1, Vertex a2,
                              Vertex omega) {
  require(a1 != a2, "connector count: a1 and a2 must differ");
  require(a1 >= 1 && a2 >= 1 && a1 <= omega && a2 <= omega && omega < g.n(),
          "connector count: need a1, a2 <= omega < n");
  const auto x = g.upper_neighbors(a1);
  const auto y = g.upper_neighbors(a2);
  auto i = std::upper_bound(x.begin(), x.end(), omega);
  auto j = std::upper_bound(y.begin(), y.end(), omega);
  std::uint64_t count = 0;
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::uint64_t min_connector_count(const MultiGraph& g, Vertex omega) {
  require(omega >= 2, "connector count: omega must be at least 2");
  std::uint64_t best = UINT64_MAX;
  for (Vertex a1 = 1; a1 <= omega; ++a1) {
    for (Vertex a2 = a1 + 1; a2 <= omega; ++a2) {
      best = std::min(best, connector_count(g, a1, a2, omega));
    }
  }
  return best;
}

namespace {

// A subset A (bit v-1 for vertex v) spans a maximal recursive tree iff every
// non-minimal member has an earlier neighbour in A and no vertex outside A
// joins a member of A from above.
bool spans_maximal_tree(const MultiGraph& g, std::uint32_t set) {
  const Vertex lowest = static_cast<Vertex>(__builtin_ctz(set)) + 1;
  std::uint32_t has_lower = 0;
  for (Vertex a = 1; a <= g.n(); ++a) {
    if (!(set >> (a - 1) & 1u)) continue;
    for (Vertex b : g.upper_neighbors(a)) {
      if (b == a) continue;
      if (!(set >> (b - 1) & 1u)) return false;
      has_lower |= 1u << (b - 1);
    }
  }
  const std::uint32_t need = set & ~(1u << (lowest - 1));
  return (need & ~has_lower) == 0;
}

}  // namespace

bool prefix_maxtree_present(const MultiGraph& g, std::uint32_t mu) {
  const std::uint32_t n = g.n();
  require(mu <= n, "prefix max-tree: mu must not exceed n");
  if (mu == 0) return false;
  if (g.m() == 1) {
    const MaxTreeForest f = forest_m1(g);
    for (Vertex v = 1; v <= mu; ++v) {
      if (f.subtree_max[v - 1] <= mu) return true;
    }
    return false;
  }
  if (n > kPrefixMaxtreeOracleLimit) {
    fail(ErrorCode::kUnsupportedMethod,
         "prefix max-tree: m >= 2 is only searched for n <= 20");
  }
  for (std::uint32_t set = 1; set < (1u << mu); ++set) {
    if (spans_maximal_tree(g, set)) return true;
  }
  return false;
}

}  // namespace brpa
