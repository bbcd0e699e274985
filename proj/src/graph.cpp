#include "spasync/graph.hpp"

#include <numeric>

namespace spasync {

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(arcs_.size());
  for (std::size_t u = 0; u + 1 < offsets_.size(); ++u) {
    for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
      out.push_back({static_cast<VertexId>(u), arcs_[i].target, arcs_[i].weight});
    }
  }
  return out;
}

Graph build_graph(std::span<const Edge> edges, std::size_t n, bool directed) {
  std::vector<std::size_t> counts(n + 1, 0);
  for (const auto& e : edges) {
    if (e.source >= n || e.target >= n) {
      throw GraphError("edge (" + std::to_string(e.source) + ", " + std::to_string(e.target) +
                       ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (e.source == e.target) continue;
    ++counts[e.source + 1];
    if (!directed) ++counts[e.target + 1];
  }
  std::inclusive_scan(counts.begin(), counts.end(), counts.begin());

  Graph g;
  g.directed_ = directed;
  g.offsets_ = counts;
  g.arcs_.resize(counts[n]);
  auto cursor = counts;
  for (const auto& e : edges) {
    if (e.source == e.target) continue;
    g.arcs_[cursor[e.source]++] = {e.target, e.weight};
    if (!directed) g.arcs_[cursor[e.target]++] = {e.source, e.weight};
  }
  return g;
}

VertexId max_out_degree_vertex(const Graph& g) {
  VertexId best = 0;
  for (VertexId u = 1; u < g.n_vertices(); ++u) {
    if (g.out_degree(u) > g.out_degree(best)) best = u;
  }
  return best;
}

}  // namespace spasync
