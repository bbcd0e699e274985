#include "spasync/rmat.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace spasync {

void validate(const GenSpec& spec) {
  if (spec.scale < 1 || spec.scale > 31) throw std::invalid_argument("scale must be in [1, 31]");
  if (spec.edge_factor < 1) throw std::invalid_argument("edge_factor must be >= 1");
  for (double p : {spec.a, spec.b, spec.c, spec.d}) {
    if (p < 0.0) throw std::invalid_argument("negative quadrant probability");
  }
  if (std::abs(spec.a + spec.b + spec.c + spec.d - 1.0) > 1e-9) {
    throw std::invalid_argument("quadrant probabilities must sum to 1");
  }
  if (spec.weight_lo < 1) throw std::invalid_argument("weight_lo must be >= 1");
  if (spec.weight_hi <= spec.weight_lo) throw std::invalid_argument("weight_hi must exceed weight_lo");
}

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Graph generate_rmat(const GenSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  const std::size_t n = std::size_t{1} << spec.scale;
  const std::size_t m = n * spec.edge_factor;
  const double ab = spec.a + spec.b;
  const double abc = ab + spec.c;

  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    VertexId u = 0;
    VertexId v = 0;
    for (unsigned level = 0; level < spec.scale; ++level) {
      const double r = uniform01(rng);
      const VertexId bit = VertexId{1} << level;
      if (r >= abc) {
        u |= bit;
        v |= bit;
      } else if (r >= ab) {
        u |= bit;
      } else if (r >= spec.a) {
        v |= bit;
      }
    }
    if (u == v) continue;
    const Weight w = spec.weight_lo + rng() % (spec.weight_hi - spec.weight_lo);
    edges.push_back({u, v, w});
  }

  if (spec.scramble) {
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
    for (auto& e : edges) {
      e.source = perm[e.source];
      e.target = perm[e.target];
    }
  }
  return build_graph(edges, n, true);
}

}  // namespace spasync
