#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "spasync/types.hpp"

namespace spasync {

enum class Color : std::uint8_t { white, black };

struct DistUpdate {
  VertexId vertex = 0;
  Dist dist = 0;
};

struct Token {
  Color color = Color::white;
  std::int64_t count = 0;
};

struct RedToken {};

struct Message {
  Rank src = 0;
  Rank dst = 0;
  std::variant<DistUpdate, Token, RedToken> payload;

  [[nodiscard]] bool is_update() const noexcept { return std::holds_alternative<DistUpdate>(payload); }
};

/// A process misused the transport (for example, sent after terminating).
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class TransportMode { simulated, threaded };

struct TransportConfig {
  std::size_t n_parts = 1;
  TransportMode mode = TransportMode::simulated;
  // Simulated delivery delay, drawn uniformly from [min_delay, max_delay] ticks.
  Tick min_delay = 1;
  Tick max_delay = 1;
  std::uint64_t seed = 0;
  Tick tick_cap = 20'000'000;
  double wall_cap_seconds = 120.0;
  // Test hook for adversarial schedules: a returned value replaces the drawn delay.
  std::function<std::optional<Tick>(const Message&, Tick now)> delay_override;
};

/// Throws std::invalid_argument on inconsistent settings.
void validate(const TransportConfig& cfg);

/// One rank's handle on the network. Owned by the network; used only from
/// that rank's thread of control.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  [[nodiscard]] virtual Rank rank() const noexcept = 0;
  [[nodiscard]] virtual std::size_t size() const noexcept = 0;
  /// Never blocks. Throws ProtocolError after close().
  virtual void send(Rank dst, Message msg) = 0;
  /// Drains every message deliverable now, in delivery order.
  virtual std::vector<Message> poll() = 0;
  /// Marks the rank as terminated.
  virtual void close() noexcept = 0;
};

struct StepOutcome {
  bool terminated = false;
  // Set by the rank that announces protocol-backed global termination.
  bool announced_clean = false;
};

/// A logical process driven one quantum at a time by a scheduler.
class Process {
 public:
  virtual ~Process() = default;
  virtual StepOutcome step(Endpoint& ep) = 0;
  /// Pending queue entries.
  [[nodiscard]] virtual bool has_queued_work() const = 0;
  /// Queued work or any other local activity that is not yet finished.
  [[nodiscard]] virtual bool has_local_work() const = 0;
};

/// Per-channel message counts, indexed by (src, dst).
class ChannelLedger {
 public:
  explicit ChannelLedger(std::size_t n_parts = 0)
      : n_(n_parts), sent_(n_parts * n_parts, 0), received_(n_parts * n_parts, 0) {}

  void on_send(Rank src, Rank dst) { ++sent_[src * n_ + dst]; }
  void on_receive(Rank src, Rank dst) { ++received_[src * n_ + dst]; }
  [[nodiscard]] std::uint64_t sent(Rank src, Rank dst) const { return sent_[src * n_ + dst]; }
  [[nodiscard]] std::uint64_t received(Rank src, Rank dst) const { return received_[src * n_ + dst]; }
  [[nodiscard]] bool balanced() const { return sent_ == received_; }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> sent_;
  std::vector<std::uint64_t> received_;
};

/// Deterministic discrete-event network. Each send draws a delay from the
/// seeded generator; delivery order per (src, dst) channel is FIFO even when a
/// later message draws a shorter delay.
class SimNetwork {
 public:
  explicit SimNetwork(TransportConfig cfg);
  ~SimNetwork();
  SimNetwork(const SimNetwork&) = delete;
  SimNetwork& operator=(const SimNetwork&) = delete;

  [[nodiscard]] Endpoint& endpoint(Rank r);
  [[nodiscard]] std::size_t size() const noexcept { return cfg_.n_parts; }
  [[nodiscard]] Tick now() const noexcept { return now_; }

  /// Advances the clock to t and moves every message due by t into inboxes.
  void begin_tick(Tick t);

  /// Sent but not yet polled.
  [[nodiscard]] std::uint64_t in_flight_updates() const noexcept { return updates_sent_ - updates_received_; }
  [[nodiscard]] std::uint64_t in_flight_messages() const noexcept { return messages_sent_ - messages_received_; }
  [[nodiscard]] std::uint64_t updates_sent() const noexcept { return updates_sent_; }
  [[nodiscard]] std::uint64_t messages_sent() const noexcept { return messages_sent_; }
  [[nodiscard]] const ChannelLedger& update_ledger() const noexcept { return update_ledger_; }

 private:
  class SimEndpoint;
  struct Pending {
    Tick due;
    std::uint64_t seq;
    Message msg;
  };
  struct Later {
    bool operator()(const Pending& a, const Pending& b) const noexcept {
      return a.due != b.due ? a.due > b.due : a.seq > b.seq;
    }
  };

  void send(Rank src, Rank dst, Message msg);
  std::vector<Message> poll(Rank dst);
  Tick draw_delay();

  TransportConfig cfg_;
  std::mt19937_64 rng_;
  Tick now_ = 0;
  std::uint64_t seq_ = 0;
  std::priority_queue<Pending, std::vector<Pending>, Later> pending_;
  std::vector<Tick> channel_due_;  // latest due tick per (src, dst)
  std::vector<std::vector<Message>> inbox_;
  std::vector<std::unique_ptr<SimEndpoint>> endpoints_;
  ChannelLedger update_ledger_;
  std::uint64_t updates_sent_ = 0;
  std::uint64_t updates_received_ = 0;
  std::uint64_t messages_sent_ = 0;
  std::uint64_t messages_received_ = 0;
};

struct SimOutcome {
  Tick ticks = 0;  // scheduler ticks executed
  bool all_terminated = false;
  bool tick_cap_hit = false;
  std::size_t safety_violations = 0;
  std::optional<Tick> quiescent_tick;
  std::uint64_t messages_sent = 0;
  std::uint64_t updates_sent = 0;
  std::uint64_t in_flight_at_end = 0;
};

using TickObserver = std::function<void(Tick, const SimNetwork&)>;

/// Round-robin cooperative scheduler. Each tick delivers due messages, then
/// steps every live process once in rank order. Stops when all processes
/// terminate or after tick_cap ticks. A clean announcement while updates are
/// in flight or any queue is non-empty counts as a safety violation.
SimOutcome run_simulation(std::span<Process* const> procs, SimNetwork& net, Tick tick_cap,
                          const TickObserver& observer = {});
SimOutcome run_simulation(std::span<Process* const> procs, const TransportConfig& cfg);

/// Shared-memory network for one thread per rank. FIFO per channel.
class ThreadNetwork {
 public:
  explicit ThreadNetwork(std::size_t n_parts);
  ~ThreadNetwork();
  ThreadNetwork(const ThreadNetwork&) = delete;
  ThreadNetwork& operator=(const ThreadNetwork&) = delete;

  [[nodiscard]] Endpoint& endpoint(Rank r);
  [[nodiscard]] std::size_t size() const noexcept { return mailboxes_.size(); }
  [[nodiscard]] std::uint64_t in_flight_updates() const noexcept {
    return updates_sent_.load() - updates_received_.load();
  }
  [[nodiscard]] std::uint64_t updates_sent() const noexcept { return updates_sent_.load(); }
  [[nodiscard]] std::uint64_t messages_sent() const noexcept { return messages_sent_.load(); }

 private:
  class ThreadEndpoint;
  struct Mailbox {
    std::mutex mu;
    std::vector<Message> queue;
  };

  void send(Rank dst, Message msg);
  std::vector<Message> poll(Rank dst);

  std::vector<std::unique_ptr<Mailbox>> mailboxes_;
  std::vector<std::unique_ptr<ThreadEndpoint>> endpoints_;
  std::atomic<std::uint64_t> updates_sent_{0};
  std::atomic<std::uint64_t> updates_received_{0};
  std::atomic<std::uint64_t> messages_sent_{0};
};

struct ThreadOutcome {
  double seconds = 0.0;
  bool all_terminated = false;
  bool wall_cap_hit = false;
  std::size_t safety_violations = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t updates_sent = 0;
};

/// Runs each process on its own thread until all terminate or the wall-clock
/// cap expires. Only the in-flight ledger is checked on clean announcements.
ThreadOutcome run_threads(std::span<Process* const> procs, ThreadNetwork& net, double wall_cap_seconds);

}  // namespace spasync
