#pragma once

#include <cstdint>
#include <vector>

#include "spasync/graph.hpp"

namespace spasync {

struct OracleResult {
  std::vector<Dist> dist;
  std::uint64_t pops = 0;
  std::uint64_t relaxations = 0;
  // Settled vertices in pop order (Dijkstra only).
  std::vector<VertexId> pop_order;
};

/// Sequential Dijkstra with a lazy-deletion heap; ties pop by vertex id.
OracleResult dijkstra_seq(const Graph& g, VertexId source);

/// Sequential Bellman-Ford, stopping early once a sweep changes nothing.
OracleResult bellman_ford_seq(const Graph& g, VertexId source);

}  // namespace spasync
