#include "spasync/trishla.hpp"

#include <algorithm>
#include <optional>

namespace spasync {

namespace {

// Lightest live arc mid -> target stored in the partition.
std::optional<Weight> local_arc_weight(const Partition& part, VertexId mid, VertexId target) {
  std::optional<Weight> best;
  const auto lu = part.local_index(mid);
  for (std::size_t s = part.arc_begin(lu); s < part.arc_end(lu); ++s) {
    if (!part.alive(s) || part.arc(s).target != target) continue;
    if (!best || part.arc(s).weight < *best) best = part.arc(s).weight;
  }
  return best;
}

}  // namespace

PruneState prune_step(Partition& part, PruneState st, std::size_t budget) {
  if (st.done) return st;
  budget = std::max<std::size_t>(budget, 1);
  std::size_t spent = 0;
  while (st.vertex < part.n_owned()) {
    const auto base = part.arc_begin(st.vertex);
    const auto degree = part.arc_end(st.vertex) - base;
    for (; st.first < degree; ++st.first, st.second = 0) {
      const auto slot_i = base + st.first;
      if (!part.alive(slot_i) || !part.owns(part.arc(slot_i).target)) continue;
      const auto mid = part.arc(slot_i).target;
      for (; st.second < degree; ++st.second) {
        const auto slot_j = base + st.second;
        if (slot_j == slot_i || !part.alive(slot_j)) continue;
        if (spent == budget) return st;
        ++spent;
        ++st.examined;
        const auto& direct = part.arc(slot_j);
        if (direct.target == mid) continue;
        const auto hop = local_arc_weight(part, mid, direct.target);
        if (hop && direct.weight > part.arc(slot_i).weight + *hop) {
          part.delete_arc(slot_j);
          ++st.removed;
        }
      }
    }
    ++st.vertex;
    st.first = 0;
    st.second = 0;
  }
  st.done = true;
  return st;
}

std::pair<Partition, std::size_t> prune_full(const Partition& part) {
  Partition work = part;
  PruneState st;
  while (!st.done) st = prune_step(work, st, 4096);
  return {work.compacted(), st.removed};
}

}  // namespace spasync
