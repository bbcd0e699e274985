#include "spasync/partition.hpp"

#include <algorithm>
#include <string>

namespace spasync {

PartitionLayout::PartitionLayout(std::size_t n_vertices, std::size_t n_parts)
    : n_vertices_(n_vertices), n_parts_(n_parts) {
  if (n_parts == 0 || n_parts > std::max<std::size_t>(n_vertices, 1)) {
    throw GraphError("partition count " + std::to_string(n_parts) + " outside [1, " +
                     std::to_string(n_vertices) + "]");
  }
  block_ = (n_vertices + n_parts - 1) / n_parts;
}

Rank PartitionLayout::owner(VertexId v) const {
  if (v >= n_vertices_) {
    throw GraphError("vertex " + std::to_string(v) + " outside [0, " + std::to_string(n_vertices_) + ")");
  }
  return static_cast<Rank>(v / block_);
}

VertexId PartitionLayout::first(Rank r) const noexcept {
  return static_cast<VertexId>(std::min(n_vertices_, static_cast<std::size_t>(r) * block_));
}

VertexId PartitionLayout::last(Rank r) const noexcept {
  return static_cast<VertexId>(std::min(n_vertices_, (static_cast<std::size_t>(r) + 1) * block_));
}

std::size_t Partition::out_degree(VertexId v) const {
  const auto lu = local_index(v);
  std::size_t d = 0;
  for (std::size_t s = offsets_[lu]; s < offsets_[lu + 1]; ++s) d += alive_[s];
  return d;
}

std::vector<Edge> Partition::edges() const {
  std::vector<Edge> out;
  out.reserve(n_alive_);
  for (VertexId v = first_; v < last_; ++v) {
    for_each_arc(v, [&](const Arc& a) { out.push_back({v, a.target, a.weight}); });
  }
  return out;
}

void Partition::delete_arc(std::size_t slot) {
  if (!alive_[slot]) return;
  alive_[slot] = 0;
  --n_alive_;
  if (!owns(arcs_[slot].target)) --n_interedges_;
}

Partition Partition::compacted() const {
  Partition out = *this;
  out.offsets_.assign(1, 0);
  out.arcs_.clear();
  for (std::size_t lu = 0; lu < n_owned(); ++lu) {
    for (std::size_t s = offsets_[lu]; s < offsets_[lu + 1]; ++s) {
      if (alive_[s]) out.arcs_.push_back(arcs_[s]);
    }
    out.offsets_.push_back(out.arcs_.size());
  }
  out.alive_.assign(out.arcs_.size(), 1);
  return out;
}

std::vector<Partition> partition_graph(const Graph& g, std::size_t p) {
  if (p == 0 || p > g.n_vertices()) {
    throw GraphError("partition count " + std::to_string(p) + " outside [1, " +
                     std::to_string(g.n_vertices()) + "]");
  }
  const PartitionLayout layout(g.n_vertices(), p);
  std::vector<Partition> parts(p);
  for (Rank r = 0; r < p; ++r) {
    auto& part = parts[r];
    part.part_id_ = r;
    part.layout_ = layout;
    part.first_ = layout.first(r);
    part.last_ = layout.last(r);
    for (VertexId u = part.first_; u < part.last_; ++u) {
      for (const auto& a : g.out_arcs(u)) {
        part.arcs_.push_back(a);
        if (!part.owns(a.target)) ++part.n_interedges_;
      }
      part.offsets_.push_back(part.arcs_.size());
    }
    part.alive_.assign(part.arcs_.size(), 1);
    part.n_alive_ = part.arcs_.size();
  }
  return parts;
}

}  // namespace spasync
