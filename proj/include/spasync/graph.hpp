#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spasync/types.hpp"

namespace spasync {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable weighted digraph in compressed sparse row form.
///
/// Arcs of vertex u occupy arcs_[offsets_[u] .. offsets_[u+1]). Self-loops are
/// dropped on construction; parallel arcs are kept in input order.
class Graph {
 public:
  Graph() = default;

  [[nodiscard]] std::size_t n_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::size_t n_edges() const noexcept { return arcs_.size(); }
  [[nodiscard]] bool directed() const noexcept { return directed_; }

  [[nodiscard]] std::span<const Arc> out_arcs(VertexId u) const {
    return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
  }
  [[nodiscard]] std::size_t out_degree(VertexId u) const { return offsets_[u + 1] - offsets_[u]; }

  /// All arcs as (source, target, weight) triples in CSR order.
  [[nodiscard]] std::vector<Edge> edges() const;

  friend Graph build_graph(std::span<const Edge> edges, std::size_t n, bool directed);

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  bool directed_ = true;
};

/// Builds a graph over vertices [0, n). Undirected input materializes both
/// arcs per edge. Throws GraphError on out-of-range endpoints.
Graph build_graph(std::span<const Edge> edges, std::size_t n, bool directed = true);

/// Vertex with the largest out-degree, lowest id on ties.
VertexId max_out_degree_vertex(const Graph& g);

}  // namespace spasync
