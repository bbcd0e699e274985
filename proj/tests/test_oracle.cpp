#include <doctest.h>

#include "spasync/oracle.hpp"
#include "test_util.hpp"

using namespace spasync;
using spasync::testing::random_graph;

namespace {

// Every arc satisfies dist(v) <= dist(u) + w once dist(u) is finite.
bool edge_triangle_inequality(const Graph& g, const std::vector<Dist>& dist) {
  for (const auto& e : g.edges()) {
    if (dist[e.source] != kInfinity && dist[e.target] > dist[e.source] + e.weight) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("path distances") {
  const std::vector<Edge> e{{0, 1, 5}, {1, 2, 3}};
  const auto g = build_graph(e, 3, true);
  CHECK(dijkstra_seq(g, 0).dist == std::vector<Dist>{0, 5, 8});
  CHECK(bellman_ford_seq(g, 0).dist == std::vector<Dist>{0, 5, 8});
}

TEST_CASE("unreachable vertices stay at infinity") {
  const std::vector<Edge> e{{0, 1, 5}};
  const auto g = build_graph(e, 3, true);
  CHECK(dijkstra_seq(g, 0).dist[2] == kInfinity);
  CHECK(bellman_ford_seq(g, 0).dist[2] == kInfinity);
  CHECK(dijkstra_seq(g, 1).dist == std::vector<Dist>{kInfinity, 0, kInfinity});
}

TEST_CASE("source out of range") {
  const auto g = random_graph(4, 4, 0);
  CHECK_THROWS_AS(dijkstra_seq(g, 4), GraphError);
  CHECK_THROWS_AS(bellman_ford_seq(g, 9), GraphError);
}

TEST_CASE("8-vertex graph: both oracles agree") {
  const auto g = random_graph(8, 20, 123);
  for (VertexId s = 0; s < 8; ++s) CHECK(dijkstra_seq(g, s).dist == bellman_ford_seq(g, s).dist);
}

TEST_CASE("property: oracles agree and satisfy the triangle inequality") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 2 + seed % 70;
    const auto g = random_graph(n, n * (1 + seed % 6), seed, 1 + seed % 30);
    const VertexId s = static_cast<VertexId>(seed % n);
    const auto d = dijkstra_seq(g, s);
    CHECK(d.dist == bellman_ford_seq(g, s).dist);
    CHECK(d.dist[s] == 0);
    CHECK(edge_triangle_inequality(g, d.dist));
    CHECK(d.pops == d.pop_order.size());
  }
}

TEST_CASE("pop order is non-decreasing in distance with id tie-break") {
  const auto g = random_graph(200, 1200, 5, 2);
  const auto d = dijkstra_seq(g, 0);
  for (std::size_t i = 1; i < d.pop_order.size(); ++i) {
    const auto a = d.pop_order[i - 1];
    const auto b = d.pop_order[i];
    CHECK(std::pair(d.dist[a], a) < std::pair(d.dist[b], b));
  }
}
