#include "spasync/oracle.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>
#include <utility>

namespace spasync {

namespace {

void check_source(const Graph& g, VertexId source) {
  if (source >= g.n_vertices()) {
    throw GraphError("source " + std::to_string(source) + " outside [0, " + std::to_string(g.n_vertices()) + ")");
  }
}

}  // namespace

OracleResult dijkstra_seq(const Graph& g, VertexId source) {
  check_source(g, source);
  OracleResult res;
  res.dist.assign(g.n_vertices(), kInfinity);
  using Entry = std::pair<Dist, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  res.dist[source] = 0;
  pq.emplace(0, source);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > res.dist[u]) continue;
    ++res.pops;
    res.pop_order.push_back(u);
    for (const auto& a : g.out_arcs(u)) {
      ++res.relaxations;
      if (d + a.weight < res.dist[a.target]) {
        res.dist[a.target] = d + a.weight;
        pq.emplace(d + a.weight, a.target);
      }
    }
  }
  return res;
}

OracleResult bellman_ford_seq(const Graph& g, VertexId source) {
  check_source(g, source);
  OracleResult res;
  res.dist.assign(g.n_vertices(), kInfinity);
  res.dist[source] = 0;
  const auto n = g.n_vertices();
  for (std::size_t round = 0; round + 1 < std::max<std::size_t>(n, 2); ++round) {
    bool changed = false;
    for (VertexId u = 0; u < n; ++u) {
      if (res.dist[u] == kInfinity) continue;
      for (const auto& a : g.out_arcs(u)) {
        ++res.relaxations;
        if (res.dist[u] + a.weight < res.dist[a.target]) {
          res.dist[a.target] = res.dist[u] + a.weight;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return res;
}

}  // namespace spasync
