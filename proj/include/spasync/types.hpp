#pragma once

#include <cstdint>
#include <limits>

namespace spasync {

using VertexId = std::uint32_t;
using Weight = std::uint64_t;
// Sum of weights along a path.
using Dist = std::uint64_t;
using Rank = std::uint32_t;
using Tick = std::uint64_t;

inline constexpr Dist kInfinity = std::numeric_limits<Dist>::max();

struct Arc {
  VertexId target = 0;
  Weight weight = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  Weight weight = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

}  // namespace spasync
