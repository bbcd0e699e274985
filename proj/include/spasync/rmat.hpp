#pragma once

#include <cstdint>

#include "spasync/graph.hpp"

namespace spasync {

struct GenSpec {
  unsigned scale = 10;
  unsigned edge_factor = 16;
  // Quadrant probabilities; Graph500 defaults.
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
  // Weights are drawn uniformly from [weight_lo, weight_hi).
  Weight weight_lo = 1;
  Weight weight_hi = 20;
  std::uint64_t seed = 1;
  // Relabel vertices with a seeded permutation so hubs spread across blocks.
  bool scramble = true;
};

/// Throws std::invalid_argument when the probabilities do not sum to 1, the
/// weight range is empty or starts below 1, or the scale is outside [1, 31].
void validate(const GenSpec& spec);

/// 2^scale vertices and exactly edge_factor * 2^scale directed arcs. Self-loops
/// are redrawn; parallel arcs are kept. Deterministic for a fixed seed.
Graph generate_rmat(const GenSpec& spec);

}  // namespace spasync
