#pragma once

#include <cstddef>
#include <utility>

#include "spasync/partition.hpp"

namespace spasync {

/// Resume point of an incremental triangle-pruning scan.
///
/// The scan visits owned vertices u in ascending order and, for each u, the
/// ordered pairs (i, j) of its arc slots in adjacency order.
struct PruneState {
  std::size_t vertex = 0;  // local index of u
  std::size_t first = 0;   // offset of arc (u, v_i) within u's slots
  std::size_t second = 0;  // offset of arc (u, v_j) within u's slots
  std::size_t removed = 0;
  std::size_t examined = 0;
  bool done = false;
};

/// Examines at most `budget` candidate triangles (u, v_i, v_j) and deletes
/// arc (u, v_j) when w(u, v_j) > w(u, v_i) + w(v_i, v_j). The witness arc
/// (v_i, v_j) must be stored in this partition, so v_i has to be owned.
/// Deletions are immediate; deleted arcs are never used as witnesses.
PruneState prune_step(Partition& part, PruneState st, std::size_t budget);

/// Runs the scan to completion on a copy. Returns the compacted result and
/// the number of arcs removed.
std::pair<Partition, std::size_t> prune_full(const Partition& part);

}  // namespace spasync
