#include "spasync/transport.hpp"

#include <chrono>
#include <string>
#include <thread>

namespace spasync {

void validate(const TransportConfig& cfg) {
  if (cfg.n_parts == 0) throw std::invalid_argument("transport needs at least one rank");
  if (cfg.min_delay < 1) throw std::invalid_argument("min_delay must be >= 1");
  if (cfg.max_delay < cfg.min_delay) throw std::invalid_argument("max_delay must be >= min_delay");
}

namespace {

void check_dst(Rank dst, std::size_t n) {
  if (dst >= n) throw ProtocolError("send to rank " + std::to_string(dst) + " of " + std::to_string(n));
}

}  // namespace

// ---------------------------------------------------------------------------
// Simulated network

class SimNetwork::SimEndpoint final : public Endpoint {
 public:
  SimEndpoint(SimNetwork& net, Rank rank) : net_(net), rank_(rank) {}

  Rank rank() const noexcept override { return rank_; }
  std::size_t size() const noexcept override { return net_.size(); }

  void send(Rank dst, Message msg) override {
    if (closed_) throw ProtocolError("rank " + std::to_string(rank_) + " sent after terminating");
    net_.send(rank_, dst, std::move(msg));
  }

  std::vector<Message> poll() override { return net_.poll(rank_); }
  void close() noexcept override { closed_ = true; }

 private:
  SimNetwork& net_;
  Rank rank_;
  bool closed_ = false;
};

SimNetwork::SimNetwork(TransportConfig cfg)
    : cfg_(std::move(cfg)),
      rng_(cfg_.seed),
      channel_due_(cfg_.n_parts * cfg_.n_parts, 0),
      inbox_(cfg_.n_parts),
      update_ledger_(cfg_.n_parts) {
  validate(cfg_);
  for (Rank r = 0; r < cfg_.n_parts; ++r) endpoints_.push_back(std::make_unique<SimEndpoint>(*this, r));
}

SimNetwork::~SimNetwork() = default;

Endpoint& SimNetwork::endpoint(Rank r) { return *endpoints_.at(r); }

Tick SimNetwork::draw_delay() {
  // Modulo keeps the draw sequence identical across standard libraries.
  const auto span = cfg_.max_delay - cfg_.min_delay + 1;
  return cfg_.min_delay + rng_() % span;
}

void SimNetwork::send(Rank src, Rank dst, Message msg) {
  check_dst(dst, cfg_.n_parts);
  msg.src = src;
  msg.dst = dst;
  auto delay = draw_delay();
  if (cfg_.delay_override) {
    if (auto forced = cfg_.delay_override(msg, now_)) delay = std::max<Tick>(*forced, 1);
  }
  auto& channel = channel_due_[src * cfg_.n_parts + dst];
  channel = std::max(channel, now_ + delay);
  ++messages_sent_;
  if (msg.is_update()) {
    ++updates_sent_;
    update_ledger_.on_send(src, dst);
  }
  pending_.push({channel, seq_++, std::move(msg)});
}

void SimNetwork::begin_tick(Tick t) {
  now_ = t;
  while (!pending_.empty() && pending_.top().due <= now_) {
    auto msg = pending_.top().msg;
    pending_.pop();
    inbox_[msg.dst].push_back(std::move(msg));
  }
}

std::vector<Message> SimNetwork::poll(Rank dst) {
  std::vector<Message> out;
  out.swap(inbox_[dst]);
  messages_received_ += out.size();
  for (const auto& m : out) {
    if (m.is_update()) {
      ++updates_received_;
      update_ledger_.on_receive(m.src, m.dst);
    }
  }
  return out;
}

SimOutcome run_simulation(std::span<Process* const> procs, SimNetwork& net, Tick tick_cap,
                          const TickObserver& observer) {
  const auto n = procs.size();
  if (n != net.size()) throw std::invalid_argument("process count does not match network size");
  std::vector<bool> terminated(n, false);
  std::size_t live = n;
  SimOutcome out;

  for (Tick tick = 0;; ++tick) {
    if (tick == tick_cap) {
      out.tick_cap_hit = true;
      out.ticks = tick;
      break;
    }
    net.begin_tick(tick);
    for (Rank r = 0; r < n; ++r) {
      if (terminated[r]) continue;
      auto& ep = net.endpoint(r);
      const auto res = procs[r]->step(ep);
      if (res.announced_clean) {
        bool busy = net.in_flight_updates() != 0;
        for (auto* p : procs) busy = busy || p->has_queued_work();
        if (busy) ++out.safety_violations;
      }
      if (res.terminated) {
        terminated[r] = true;
        ep.close();
        --live;
      }
    }
    if (!out.quiescent_tick && net.in_flight_updates() == 0) {
      bool idle = true;
      for (Rank r = 0; r < n && idle; ++r) idle = terminated[r] || !procs[r]->has_local_work();
      if (idle) out.quiescent_tick = tick;
    }
    if (observer) observer(tick, net);
    if (live == 0) {
      out.all_terminated = true;
      out.ticks = tick + 1;
      break;
    }
  }
  out.messages_sent = net.messages_sent();
  out.updates_sent = net.updates_sent();
  out.in_flight_at_end = net.in_flight_messages();
  return out;
}

SimOutcome run_simulation(std::span<Process* const> procs, const TransportConfig& cfg) {
  SimNetwork net(cfg);
  return run_simulation(procs, net, cfg.tick_cap);
}

// ---------------------------------------------------------------------------
// Thread-per-rank network

class ThreadNetwork::ThreadEndpoint final : public Endpoint {
 public:
  ThreadEndpoint(ThreadNetwork& net, Rank rank) : net_(net), rank_(rank) {}

  Rank rank() const noexcept override { return rank_; }
  std::size_t size() const noexcept override { return net_.size(); }

  void send(Rank dst, Message msg) override {
    if (closed_) throw ProtocolError("rank " + std::to_string(rank_) + " sent after terminating");
    msg.src = rank_;
    msg.dst = dst;
    net_.send(dst, std::move(msg));
  }

  std::vector<Message> poll() override { return net_.poll(rank_); }
  void close() noexcept override { closed_ = true; }

 private:
  ThreadNetwork& net_;
  Rank rank_;
  bool closed_ = false;
};

ThreadNetwork::ThreadNetwork(std::size_t n_parts) {
  if (n_parts == 0) throw std::invalid_argument("transport needs at least one rank");
  for (Rank r = 0; r < n_parts; ++r) {
    mailboxes_.push_back(std::make_unique<Mailbox>());
    endpoints_.push_back(std::make_unique<ThreadEndpoint>(*this, r));
  }
}

ThreadNetwork::~ThreadNetwork() = default;

Endpoint& ThreadNetwork::endpoint(Rank r) { return *endpoints_.at(r); }

void ThreadNetwork::send(Rank dst, Message msg) {
  check_dst(dst, mailboxes_.size());
  const bool update = msg.is_update();
  // Count before publishing so the receiver can never observe a negative balance.
  if (update) updates_sent_.fetch_add(1);
  messages_sent_.fetch_add(1);
  auto& box = *mailboxes_[dst];
  std::lock_guard lock(box.mu);
  box.queue.push_back(std::move(msg));
}

std::vector<Message> ThreadNetwork::poll(Rank dst) {
  std::vector<Message> out;
  {
    auto& box = *mailboxes_[dst];
    std::lock_guard lock(box.mu);
    out.swap(box.queue);
  }
  std::uint64_t updates = 0;
  for (const auto& m : out) updates += m.is_update();
  if (updates) updates_received_.fetch_add(updates);
  return out;
}

ThreadOutcome run_threads(std::span<Process* const> procs, ThreadNetwork& net, double wall_cap_seconds) {
  const auto n = procs.size();
  if (n != net.size()) throw std::invalid_argument("process count does not match network size");
  std::atomic<bool> abort{false};
  std::atomic<std::size_t> violations{0};
  std::atomic<std::size_t> finished{0};
  std::vector<std::exception_ptr> errors(n);

  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + std::chrono::duration<double>(wall_cap_seconds);
  {
    std::vector<std::jthread> workers;
    workers.reserve(n);
    for (Rank r = 0; r < n; ++r) {
      workers.emplace_back([&, r] {
        auto& ep = net.endpoint(r);
        try {
          std::uint64_t iterations = 0;
          while (!abort.load(std::memory_order_relaxed)) {
            const auto res = procs[r]->step(ep);
            if (res.announced_clean && net.in_flight_updates() != 0) violations.fetch_add(1);
            if (res.terminated) {
              ep.close();
              finished.fetch_add(1);
              return;
            }
            if ((++iterations & 0xff) == 0 && std::chrono::steady_clock::now() > deadline) {
              abort.store(true);
            }
            if (!procs[r]->has_local_work()) std::this_thread::yield();
          }
        } catch (...) {
          errors[r] = std::current_exception();
          abort.store(true);
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ThreadOutcome out;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.all_terminated = finished.load() == n;
  out.wall_cap_hit = !out.all_terminated;
  out.safety_violations = violations.load();
  out.messages_sent = net.messages_sent();
  out.updates_sent = net.updates_sent();
  return out;
}

}  // namespace spasync
