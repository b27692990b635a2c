#include <doctest.h>

#include <numeric>
#include <vector>

#include "brpa/error.hpp"
#include "brpa/exact_oracle.hpp"
#include "brpa/generators.hpp"
#include "brpa/graph_stats.hpp"
#include "brpa/maxtree.hpp"
#include "oracles.hpp"

using namespace brpa;

TEST_SUITE("maxtree") {

TEST_CASE("single vertex forest") {
  const std::vector<std::pair<Vertex, Vertex>> pairs = {{1, 1}};
  const auto f = forest_m1(MultiGraph::from_pairs(1, 1, pairs));
  CHECK(f.roots == std::vector<Vertex>{1});
  CHECK(f.sizes == std::vector<std::uint32_t>{1});
}

TEST_CASE("all-loop graph gives singleton trees") {
  const std::vector<std::pair<Vertex, Vertex>> pairs = {{1, 1}, {2, 2}, {3, 3}};
  const auto f = forest_m1(MultiGraph::from_pairs(3, 1, pairs));
  CHECK(f.roots.size() == 3);
  CHECK(f.sizes == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("forest needs m = 1") {
  const std::vector<std::pair<Vertex, Vertex>> pairs = {{1, 1}, {1, 1}};
  try {
    forest_m1(MultiGraph::from_pairs(1, 2, pairs));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedMethod);
  }
}

TEST_CASE("expected number of roots of G_1^3 is 23/15") {
  Rational sum = 0;
  std::uint64_t total = 0;
  for_each_pairing(3, [&](std::span<const std::uint32_t> partner) {
    sum += static_cast<long>(forest_m1(phi_collapsed(partner, 1)).roots.size());
    ++total;
  });
  CHECK(sum / Rational(static_cast<long>(total)) == Rational(23, 15));
}

TEST_CASE("forest invariants on random graphs") {
  Rng rng(3);
  for (int s = 0; s < 100; ++s) {
    const MultiGraph g = generate(500, 1, GenMethod::kExponential, rng).graph;
    const auto f = forest_m1(g);
    CHECK(std::accumulate(f.sizes.begin(), f.sizes.end(), 0u) == 500u);
    for (Vertex r : f.roots) CHECK(g.loops_at(r) == 1);
    for (Vertex v = 1; v <= 500; ++v) {
      const Vertex p = f.parent[v - 1];
      if (p != 0) {
        CHECK(p < v);
        CHECK(g.has_edge(p, v));
      }
    }
    // Each component spans (size - 1) non-loop edges plus its root loop.
    std::vector<Vertex> root_of(501, 0);
    for (Vertex v = 1; v <= 500; ++v) root_of[v] = f.parent[v - 1] == 0 ? v : root_of[f.parent[v - 1]];
    std::vector<std::uint32_t> inner(501, 0);
    for (const auto& e : g.edges()) {
      if (e.a != e.b) {
        CHECK(root_of[e.a] == root_of[e.b]);
        inner[root_of[e.a]] += e.multiplicity;
      }
    }
    for (std::size_t i = 0; i < f.roots.size(); ++i) CHECK(inner[f.roots[i]] + 1 == f.sizes[i]);
    CHECK(spanning_recursive_exists(g) == (loop_count(g) == 1));
  }
}

TEST_CASE("scaled root component bounds") {
  Rng rng(4);
  for (int s = 0; s < 50; ++s) {
    const MultiGraph g = generate(300, 1, GenMethod::kUniformCoords, rng).graph;
    const auto f = forest_m1(g);
    for (Vertex r = 1; r <= 300; r += 37) {
      const double x = scaled_root_component(f, r);
      CHECK(x >= 1.0 / 300);
      CHECK(x <= 1.0);
      CHECK(x == scaled_root_component(g, r));
    }
    CHECK(scaled_root_component(f, 1) == doctest::Approx(f.sizes[0] / 300.0));
  }
  const std::vector<std::pair<Vertex, Vertex>> pairs = {{1, 1}};
  CHECK_THROWS_AS(scaled_root_component(MultiGraph::from_pairs(1, 1, pairs), 2), Error);
}

TEST_CASE("spanning recursive tree") {
  const std::vector<std::pair<Vertex, Vertex>> one = {{1, 1}};
  CHECK(spanning_recursive_exists(MultiGraph::from_pairs(1, 1, one)));
  const std::vector<std::pair<Vertex, Vertex>> m2 = {{1, 1}, {1, 1}, {2, 2}, {1, 2}};
  CHECK(spanning_recursive_exists(MultiGraph::from_pairs(2, 2, m2)));
  const std::vector<std::pair<Vertex, Vertex>> m2_bad = {{1, 1}, {1, 1}, {2, 2}, {2, 2}};
  CHECK_FALSE(spanning_recursive_exists(MultiGraph::from_pairs(2, 2, m2_bad)));
}

TEST_CASE("spanning tree frequency at m = 2, n = 100") {
  Rng rng(5);
  const int runs = 20000;
  int hits = 0;
  for (int s = 0; s < runs; ++s) hits += spanning_recursive_exists(generate(100, 2, GenMethod::kExponential, rng).graph);
  const double p = static_cast<double>(oracle::connect_product(100, 2));
  CHECK(std::abs(hits / static_cast<double>(runs) - p) < 3 * std::sqrt(p * (1 - p) / runs));
}

TEST_CASE("connectors") {
  Rng rng(6);
  const MultiGraph g1 = generate(200, 1, GenMethod::kExponential, rng).graph;
  for (Vertex a = 1; a <= 4; ++a) {
    for (Vertex b = a + 1; b <= 4; ++b) CHECK(connector_count(g1, a, b, 4) == 0);
  }
  // Star around vertex 1.
  std::vector<std::pair<Vertex, Vertex>> star = {{1, 1}};
  for (Vertex v = 2; v <= 6; ++v) star.emplace_back(1, v);
  const MultiGraph s = MultiGraph::from_pairs(6, 1, star);
  CHECK(connector_count(s, 1, 2, 2) == 0);
  CHECK_THROWS_AS(connector_count(s, 1, 1, 2), Error);
  CHECK_THROWS_AS(min_connector_count(s, 1), Error);

  const MultiGraph g3 = generate(400, 3, GenMethod::kExponential, rng).graph;
  for (Vertex a = 1; a <= 3; ++a) {
    for (Vertex b = a + 1; b <= 3; ++b) {
      std::uint64_t expect = 0;
      for (Vertex v = 4; v <= 400; ++v) expect += g3.has_edge(a, v) && g3.has_edge(b, v);
      CHECK(connector_count(g3, a, b, 3) == expect);
    }
  }
}

TEST_CASE("prefix maxtree for m = 1 matches a brute force descendant scan") {
  Rng rng(7);
  for (int s = 0; s < 200; ++s) {
    const MultiGraph g = generate(40, 1, GenMethod::kUniformMatching, rng).graph;
    const auto f = forest_m1(g);
    CHECK(prefix_maxtree_present(g, 40));
    CHECK_FALSE(prefix_maxtree_present(g, 0));
    for (std::uint32_t mu : {1u, 3u, 10u}) {
      // v and everything that selects into it must lie in [mu].
      bool expect = false;
      for (Vertex v = 1; v <= mu && !expect; ++v) {
        std::vector<bool> in(41, false);
        in[v] = true;
        bool inside = true;
        for (Vertex w = v + 1; w <= 40; ++w) {
          const Vertex p = f.parent[w - 1];
          in[w] = p != 0 && in[p];
          if (in[w] && w > mu) inside = false;
        }
        expect = inside;
      }
      CHECK(prefix_maxtree_present(g, mu) == expect);
    }
  }
}

TEST_CASE("prefix maxtree for m >= 2 uses the small-n search") {
  Rng rng(8);
  for (int s = 0; s < 50; ++s) {
    const MultiGraph g = generate(8, 2, GenMethod::kExponential, rng).graph;
    CHECK(prefix_maxtree_present(g, 8));
    CHECK_FALSE(prefix_maxtree_present(g, 0));
  }
  const MultiGraph big = generate(30, 2, GenMethod::kExponential, rng).graph;
  try {
    prefix_maxtree_present(big, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedMethod);
  }
}

}  // TEST_SUITE
