#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "spasync/graph.hpp"
#include "spasync/partition.hpp"
#include "spasync/termination.hpp"
#include "spasync/transport.hpp"
#include "spasync/trishla.hpp"

namespace spasync {

/// Tentative distances of the owned vertex range. Values only decrease.
class DistMap {
 public:
  DistMap() = default;
  DistMap(VertexId first, std::size_t count) : first_(first), dist_(count, kInfinity) {}

  [[nodiscard]] Dist get(VertexId v) const { return dist_[v - first_]; }
  /// Lowers dist(v) to d if that is an improvement.
  bool improve(VertexId v, Dist d) {
    auto& cur = dist_[v - first_];
    if (d >= cur) return false;
    cur = d;
    return true;
  }
  [[nodiscard]] std::span<const Dist> values() const noexcept { return dist_; }

 private:
  VertexId first_ = 0;
  std::vector<Dist> dist_;
};

/// Min-queue of (distance, vertex); ties break on vertex id. Entries go stale
/// when a vertex is pushed again with a smaller key.
using LocalPQ = std::priority_queue<std::pair<Dist, VertexId>, std::vector<std::pair<Dist, VertexId>>,
                                    std::greater<>>;

enum class Phase { pruning, working, probing_termination, terminated };

struct EngineConfig {
  TerminationMode termination = TerminationMode::token_ring;
  bool prune = true;
  // Candidate triangles examined per idle quantum.
  std::size_t prune_budget = 256;
  // Let a process prune again whenever it is idle after its first activation.
  bool resume_pruning = false;
  // Keep the sequence of settled (non-stale) pops.
  bool record_pops = false;
};

/// One rank of the asynchronous solver: Dijkstra over the owned subgraph,
/// distance updates to the owners of ghost targets, Trishla pruning while
/// idle before the first activation, and a termination detector.
class SpAsyncProcess final : public Process {
 public:
  SpAsyncProcess(Partition part, VertexId source, EngineConfig cfg = {});

  StepOutcome step(Endpoint& ep) override;
  [[nodiscard]] bool has_queued_work() const override { return !pq_.empty(); }
  [[nodiscard]] bool has_local_work() const override;

  /// Applies received messages. Distance updates must target owned vertices.
  void absorb_messages(std::span<const Message> msgs);
  /// Pops until the queue is empty, relaxing local arcs and sending an update
  /// for every arc to a ghost vertex.
  void dijkstra_drain(Endpoint& ep);

  [[nodiscard]] Phase phase() const noexcept { return phase_; }
  [[nodiscard]] const Partition& partition() const noexcept { return part_; }
  [[nodiscard]] const DistMap& dist() const noexcept { return dist_; }
  [[nodiscard]] const LocalPQ& queue() const noexcept { return pq_; }
  [[nodiscard]] const PruneState& prune_state() const noexcept { return prune_; }
  [[nodiscard]] const TermState& term_state() const noexcept { return term_; }
  [[nodiscard]] const TermVerdict& verdict() const noexcept { return verdict_; }
  [[nodiscard]] std::uint64_t msg_count() const noexcept { return msg_count_; }
  [[nodiscard]] std::uint64_t sent_count() const noexcept { return sent_count_; }
  [[nodiscard]] std::uint64_t relax_attempts() const noexcept { return relax_attempts_; }
  [[nodiscard]] std::uint64_t pops() const noexcept { return pops_; }
  [[nodiscard]] const std::vector<VertexId>& pop_order() const noexcept { return pop_order_; }

 private:
  Partition part_;
  EngineConfig cfg_;
  DistMap dist_;
  LocalPQ pq_;
  PruneState prune_;
  TermState term_;
  TermVerdict verdict_;
  Phase phase_ = Phase::pruning;
  bool activated_ = false;
  bool got_update_ = false;
  std::uint64_t msg_count_ = 0;
  std::uint64_t sent_count_ = 0;
  std::uint64_t relax_attempts_ = 0;
  std::uint64_t pops_ = 0;
  std::vector<VertexId> pop_order_;
};

enum class Verdict { clean, heuristic, tick_cap };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;
[[nodiscard]] std::optional<Verdict> parse_verdict(std::string_view text) noexcept;

struct SolveConfig {
  std::size_t n_parts = 1;
  EngineConfig engine;
  // n_parts here is overwritten from the field above.
  TransportConfig transport;
};

struct SolveResult {
  std::vector<Dist> dist;
  Verdict verdict = Verdict::tick_cap;
  Tick ticks = 0;
  double seconds = 0.0;
  std::uint64_t updates_sent = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t relax_attempts = 0;
  std::uint64_t pops = 0;
  std::size_t pruned_edges = 0;
  std::size_t safety_violations = 0;
  std::optional<Tick> quiescent_tick;
  std::uint64_t in_flight_at_end = 0;
};

/// Partitions g, runs one process per rank on the configured transport and
/// gathers every rank's distances into a global vector.
SolveResult solve(const Graph& g, VertexId source, const SolveConfig& cfg);

}  // namespace spasync
