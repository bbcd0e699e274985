#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spasync/graph.hpp"
#include "spasync/types.hpp"

namespace spasync {

/// 1D block distribution of [0, N) over P ranks with blocks of ceil(N / P).
/// Trailing ranks may own fewer vertices, or none at all.
class PartitionLayout {
 public:
  PartitionLayout() = default;
  PartitionLayout(std::size_t n_vertices, std::size_t n_parts);

  [[nodiscard]] std::size_t n_vertices() const noexcept { return n_vertices_; }
  [[nodiscard]] std::size_t n_parts() const noexcept { return n_parts_; }
  [[nodiscard]] std::size_t block() const noexcept { return block_; }

  /// Throws GraphError when v >= n_vertices().
  [[nodiscard]] Rank owner(VertexId v) const;
  [[nodiscard]] VertexId first(Rank r) const noexcept;
  /// One past the last vertex owned by r.
  [[nodiscard]] VertexId last(Rank r) const noexcept;

 private:
  std::size_t n_vertices_ = 0;
  std::size_t n_parts_ = 1;
  std::size_t block_ = 0;
};

/// One rank's share of the graph: out-arcs of the owned vertex range. Arc
/// targets may be ghosts owned elsewhere. Arcs can be deleted in place (see
/// trishla); deleted arcs stay in storage but are skipped by iteration.
class Partition {
 public:
  Partition() = default;

  [[nodiscard]] Rank part_id() const noexcept { return part_id_; }
  [[nodiscard]] const PartitionLayout& layout() const noexcept { return layout_; }
  [[nodiscard]] VertexId first() const noexcept { return first_; }
  [[nodiscard]] VertexId last() const noexcept { return last_; }
  [[nodiscard]] std::size_t n_owned() const noexcept { return last_ - first_; }
  [[nodiscard]] bool owns(VertexId v) const noexcept { return v >= first_ && v < last_; }
  [[nodiscard]] std::size_t local_index(VertexId v) const noexcept { return v - first_; }

  /// Arc slot range [begin, end) of the owned vertex with local index lu.
  [[nodiscard]] std::size_t arc_begin(std::size_t lu) const noexcept { return offsets_[lu]; }
  [[nodiscard]] std::size_t arc_end(std::size_t lu) const noexcept { return offsets_[lu + 1]; }
  [[nodiscard]] const Arc& arc(std::size_t slot) const noexcept { return arcs_[slot]; }
  [[nodiscard]] bool alive(std::size_t slot) const noexcept { return alive_[slot] != 0; }

  /// Live out-degree of owned vertex v.
  [[nodiscard]] std::size_t out_degree(VertexId v) const;

  template <typename Fn>
  void for_each_arc(VertexId v, Fn&& fn) const {
    const auto lu = local_index(v);
    for (std::size_t s = offsets_[lu]; s < offsets_[lu + 1]; ++s) {
      if (alive_[s]) fn(arcs_[s]);
    }
  }

  /// Count of live arcs.
  [[nodiscard]] std::size_t n_edges() const noexcept { return n_alive_; }
  /// Count of live arcs whose target is owned by another rank.
  [[nodiscard]] std::size_t n_interedges() const noexcept { return n_interedges_; }

  /// Live arcs as global (source, target, weight) triples.
  [[nodiscard]] std::vector<Edge> edges() const;

  void delete_arc(std::size_t slot);

  /// Copy with deleted arc slots physically removed.
  [[nodiscard]] Partition compacted() const;

  friend std::vector<Partition> partition_graph(const Graph& g, std::size_t p);

 private:
  Rank part_id_ = 0;
  PartitionLayout layout_;
  VertexId first_ = 0;
  VertexId last_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::vector<unsigned char> alive_;
  std::size_t n_alive_ = 0;
  std::size_t n_interedges_ = 0;
};

/// Splits g into p partitions; each arc goes to the owner of its source.
/// Throws GraphError unless 1 <= p <= g.n_vertices().
std::vector<Partition> partition_graph(const Graph& g, std::size_t p);

}  // namespace spasync
