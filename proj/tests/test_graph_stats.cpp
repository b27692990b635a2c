#include <doctest.h>

#include <cmath>
#include <vector>

#include "brpa/error.hpp"
#include "brpa/exact_oracle.hpp"
#include "brpa/generators.hpp"
#include "brpa/graph_stats.hpp"
#include "oracles.hpp"

using namespace brpa;

namespace {

MultiGraph from(std::uint32_t n, std::uint32_t m, std::vector<std::pair<Vertex, Vertex>> pairs) {
  return MultiGraph::from_pairs(n, m, pairs);
}

}  // namespace

TEST_SUITE("graph-stats") {

TEST_CASE("loop count basics") {
  CHECK(loop_count(from(1, 1, {{1, 1}})) == 1);
  CHECK(loop_count(from(2, 1, {{1, 1}, {2, 2}})) == 2);
}

TEST_CASE("expected loops of G_1^3 is 23/15") {
  const auto d = exact_distribution(3, 1, ExactStatistic::kLoopCount);
  CHECK(d.mean() == Rational(23, 15));
  const auto law = oracle::sequential_law(3, 1, [](const oracle::Dense& g) { return std::to_string(g.loops()); });
  oracle::Q mean = 0;
  for (const auto& [k, q] : law) mean += q * std::stoi(k);
  CHECK(mean == oracle::Q(23, 15));
}

TEST_CASE("vertex 1 always carries m loops") {
  for (auto method : {GenMethod::kSequential, GenMethod::kUniformCoords, GenMethod::kUniformMatching,
                      GenMethod::kExponential}) {
    for (std::uint32_t m : {1u, 2u, 5u}) {
      Rng rng(m * 31 + static_cast<int>(method));
      for (int s = 0; s < 20; ++s) CHECK(generate(20, m, method, rng).graph.loops_at(1) == m);
    }
  }
}

TEST_CASE("parallel pairs") {
  CHECK(parallel_pair_count(from(2, 2, {{1, 1}, {1, 2}, {1, 2}, {1, 2}})) == 3);
  CHECK(parallel_pair_count(from(2, 2, {{1, 1}, {1, 1}, {2, 2}, {2, 2}})) == 0);
  Rng rng(3);
  for (int s = 0; s < 100; ++s) CHECK(parallel_pair_count(generate(200, 1, GenMethod::kExponential, rng).graph) == 0);
}

TEST_CASE("loop, parallel and connectivity statistics match the dense oracle") {
  Rng rng(4);
  for (int s = 0; s < 300; ++s) {
    const ChordDiagram d = pairing_from_matching(9, 3, rng);
    const MultiGraph g = phi_collapsed(d.partners(), 3);
    const oracle::Dense ref = oracle::phi_dense({d.partners().begin(), d.partners().end()}, 3);
    CHECK(loop_count(g) == ref.loops());
    CHECK(parallel_pair_count(g) == ref.parallel_pairs());
    CHECK(is_connected(g) == ref.connected());
  }
}

TEST_CASE("degree report identities") {
  Rng rng(5);
  const Sample s = generate(2000, 2, GenMethod::kExponential, rng);
  const DegreeReport r = degree_report(s.graph, &*s.process, 0.3);
  const double scale = 2.0 * std::sqrt(2.0 * 2000);
  CHECK(r.prefix_length == prefix_length(2000, 0.3));
  CHECK(r.approximation[0] == doctest::Approx(scale * std::sqrt(s.process->prefix(2))));
  double sum = 0.0;
  std::uint64_t least = UINT64_MAX;
  for (std::size_t j = 0; j < r.prefix_length; ++j) {
    CHECK(r.approximation[j] >= 0.0);
    CHECK(r.degree[j] == s.graph.degree(static_cast<Vertex>(j + 1)));
    sum += r.approximation[j];
    least = std::min(least, r.degree[j]);
  }
  // Telescoping: the increments add up to sqrt(W_{m j_n}).
  CHECK(sum == doctest::Approx(scale * std::sqrt(s.process->prefix(2 * r.prefix_length))).epsilon(1e-12));
  CHECK(r.min_prefix_degree == least);
  CHECK(min_prefix_degree(s.graph, 0.3) == least);
}

TEST_CASE("degree report preconditions") {
  Rng rng(6);
  const Sample s = generate(100, 2, GenMethod::kUniformMatching, rng);
  try {
    degree_report(s.graph, nullptr, 0.3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedMethod);
  }
  const Sample e = generate(100, 2, GenMethod::kExponential, rng);
  CHECK_THROWS_AS(degree_report(e.graph, &*e.process, 0.5), Error);
  CHECK_THROWS_AS(degree_report(e.graph, &*e.process, 0.0), Error);
}

TEST_CASE("prefix length avoids flooring exact powers down") {
  CHECK(prefix_length(10000, 0.5) == 100);
  CHECK(prefix_length(1000000, 0.5) == 1000);
  CHECK(prefix_length(1, 0.3) == 1);
}

TEST_CASE("min degree threshold") {
  // eps = 1/2 - 0.3 = 0.2; exponent 0.2 * 4 / 4.
  CHECK(min_degree_threshold(1000000, 2, 0.3) == doctest::Approx(std::pow(1e6, 0.2)));
}

TEST_CASE("degree caps") {
  Rng rng(7);
  const MultiGraph g = generate(5000, 2, GenMethod::kExponential, rng).graph;
  CHECK(degree_cap_violations(g, 0.25, 1e6, 0.3) == 0);
  CHECK(degree_cap_violations(g, 0.999, 2.0, 0.9) == 0);  // empty range
  CHECK_THROWS_AS(degree_cap_violations(g, 0.25, 1.0, 0.3), Error);
  CHECK_THROWS_AS(degree_cap_violations(g, 1.5, 3.0, 0.3), Error);
  // Direct count against the definition.
  const double z = 2.0;
  std::uint64_t count = 0;
  for (std::uint64_t j = prefix_length(5000, 0.3); j <= 3750; ++j) {
    if (g.degree(static_cast<Vertex>(j)) > z * (std::sqrt(5000.0 / j) - 1.0) * std::log(5000.0)) ++count;
  }
  CHECK(degree_cap_violations(g, 0.25, z, 0.3) == count);
}

TEST_CASE("expansion and isolation") {
  Rng rng(8);
  const MultiGraph g = generate(300, 2, GenMethod::kExponential, rng).graph;
  std::vector<Vertex> all(300);
  for (Vertex v = 1; v <= 300; ++v) all[v - 1] = v;
  CHECK(outside_neighbors(g, all).empty());
  CHECK_FALSE(expansion_check(g, all, 0.1));

  std::vector<Vertex> one = {1};
  const auto nbrs = outside_neighbors(g, one);
  REQUIRE_FALSE(nbrs.empty());
  CHECK_FALSE(isolated_pair_check(g, one, nbrs));
  const std::vector<Vertex> overlap = {1, 2};
  CHECK_THROWS_AS(isolated_pair_check(g, one, overlap), Error);
  CHECK(expansion_check(g, one, static_cast<double>(nbrs.size())));
  CHECK_FALSE(expansion_check(g, one, static_cast<double>(nbrs.size()) + 0.5));
}

TEST_CASE("outside neighbors match a brute force scan") {
  Rng rng(9);
  const MultiGraph g = generate(60, 3, GenMethod::kSequential, rng).graph;
  const std::vector<Vertex> S = {2, 7, 11, 40};
  std::vector<Vertex> expect;
  for (Vertex v = 1; v <= 60; ++v) {
    if (std::find(S.begin(), S.end(), v) != S.end()) continue;
    for (Vertex s : S) {
      if (g.has_edge(s, v)) {
        expect.push_back(v);
        break;
      }
    }
  }
  CHECK(outside_neighbors(g, S) == expect);
}

}  // TEST_SUITE
