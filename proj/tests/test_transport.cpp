#include <doctest.h>

#include <map>
#include <random>
#include <thread>

#include "spasync/transport.hpp"

using namespace spasync;

namespace {

Message update(VertexId v, Dist d = 0) { return Message{0, 0, DistUpdate{v, d}}; }

TransportConfig sim_config(std::size_t p, Tick min_delay, Tick max_delay, std::uint64_t seed) {
  TransportConfig cfg;
  cfg.n_parts = p;
  cfg.min_delay = min_delay;
  cfg.max_delay = max_delay;
  cfg.seed = seed;
  return cfg;
}

// Replays the simulator's first delay draw for a seed.
Tick first_draw(std::uint64_t seed, Tick min_delay, Tick max_delay) {
  std::mt19937_64 rng(seed);
  return min_delay + rng() % (max_delay - min_delay + 1);
}

class QuitImmediately final : public Process {
 public:
  StepOutcome step(Endpoint&) override { return {.terminated = true}; }
  bool has_queued_work() const override { return false; }
  bool has_local_work() const override { return false; }
};

// Sends `budget` updates to random peers, then stops once it has seen
// `expect` messages.
class Chatter final : public Process {
 public:
  Chatter(std::uint64_t seed, int budget, int expect) : rng_(seed), budget_(budget), expect_(expect) {}

  StepOutcome step(Endpoint& ep) override {
    seen_ += static_cast<int>(ep.poll().size());
    if (budget_ > 0) {
      --budget_;
      ep.send(static_cast<Rank>(rng_() % ep.size()), update(0));
    }
    return {.terminated = budget_ == 0 && seen_ >= expect_};
  }
  bool has_queued_work() const override { return false; }
  bool has_local_work() const override { return budget_ > 0; }

 private:
  std::mt19937_64 rng_;
  int budget_;
  int expect_;
  int seen_ = 0;
};

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validate(sim_config(0, 1, 1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(sim_config(2, 0, 1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(sim_config(2, 3, 2, 0)), std::invalid_argument);
  CHECK_NOTHROW(validate(sim_config(2, 2, 2, 0)));
}

TEST_CASE("seeded delay draw decides the delivery tick") {
  std::uint64_t seed = 0;
  while (first_draw(seed, 1, 5) != 2) ++seed;

  SimNetwork net(sim_config(2, 1, 5, seed));
  net.begin_tick(3);
  net.endpoint(0).send(1, update(9, 4));
  net.begin_tick(4);
  CHECK(net.endpoint(1).poll().empty());
  CHECK(net.in_flight_updates() == 1);
  net.begin_tick(5);
  const auto got = net.endpoint(1).poll();
  REQUIRE(got.size() == 1);
  CHECK(got[0].src == 0);
  CHECK(got[0].dst == 1);
  CHECK(std::get<DistUpdate>(got[0].payload).vertex == 9);
  CHECK(net.in_flight_updates() == 0);
}

TEST_CASE("poll drains everything deliverable, in order") {
  SimNetwork net(sim_config(3, 1, 1, 0));
  net.begin_tick(0);
  CHECK(net.endpoint(2).poll().empty());
  net.endpoint(0).send(2, update(1));
  net.endpoint(1).send(2, update(2));
  net.endpoint(0).send(2, update(3));
  net.begin_tick(1);
  const auto got = net.endpoint(2).poll();
  REQUIRE(got.size() == 3);
  CHECK(std::get<DistUpdate>(got[0].payload).vertex == 1);
  CHECK(std::get<DistUpdate>(got[1].payload).vertex == 2);
  CHECK(std::get<DistUpdate>(got[2].payload).vertex == 3);
  CHECK(net.endpoint(2).poll().empty());
}

TEST_CASE("send to self is delivered to the own inbox") {
  SimNetwork net(sim_config(2, 1, 1, 0));
  net.begin_tick(0);
  net.endpoint(1).send(1, update(4));
  net.begin_tick(1);
  CHECK(net.endpoint(1).poll().size() == 1);
}

TEST_CASE("send after close and to unknown ranks are protocol errors") {
  SimNetwork net(sim_config(2, 1, 1, 0));
  CHECK_THROWS_AS(net.endpoint(0).send(2, update(0)), ProtocolError);
  net.endpoint(0).close();
  CHECK_THROWS_AS(net.endpoint(0).send(1, update(0)), ProtocolError);
}

TEST_CASE("FIFO per channel holds even when later sends draw shorter delays") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    constexpr std::size_t P = 4;
    SimNetwork net(sim_config(P, 1, 20, seed));
    std::mt19937_64 rng(seed * 31 + 1);
    std::map<std::pair<Rank, Rank>, VertexId> next_sent;
    std::map<std::pair<Rank, Rank>, VertexId> next_seen;
    for (Tick t = 0; t < 200; ++t) {
      net.begin_tick(t);
      for (Rank r = 0; r < P; ++r) {
        for (const auto& m : net.endpoint(r).poll()) {
          const auto seq = std::get<DistUpdate>(m.payload).vertex;
          CHECK(seq == next_seen[{m.src, m.dst}]++);
        }
        if (t < 150 && rng() % 2 == 0) {
          const auto dst = static_cast<Rank>(rng() % P);
          net.endpoint(r).send(dst, update(next_sent[{r, dst}]++));
        }
      }
    }
    CHECK(net.in_flight_messages() == 0);
    CHECK(next_sent == next_seen);
    CHECK(net.update_ledger().balanced());
    for (const auto& [ch, count] : next_sent) CHECK(net.update_ledger().sent(ch.first, ch.second) == count);
  }
}

TEST_CASE("delay override forces a schedule") {
  auto cfg = sim_config(2, 1, 1, 0);
  cfg.delay_override = [](const Message& m, Tick) -> std::optional<Tick> {
    return m.is_update() ? std::optional<Tick>(10) : std::nullopt;
  };
  SimNetwork net(cfg);
  net.begin_tick(0);
  net.endpoint(0).send(1, update(0));
  net.endpoint(0).send(1, Message{0, 0, Token{}});
  net.begin_tick(9);
  CHECK(net.endpoint(1).poll().empty());  // the token queues behind the update
  net.begin_tick(10);
  CHECK(net.endpoint(1).poll().size() == 2);
}

TEST_CASE("processes that stop at once send nothing") {
  QuitImmediately a, b, c;
  std::vector<Process*> procs{&a, &b, &c};
  const auto out = run_simulation(procs, sim_config(3, 1, 3, 5));
  CHECK(out.all_terminated);
  CHECK(out.ticks == 1);
  CHECK(out.messages_sent == 0);
  CHECK_FALSE(out.tick_cap_hit);
}

TEST_CASE("simulation is a pure function of its inputs and seed") {
  auto run = [](std::uint64_t seed) {
    std::vector<Chatter> chat;
    for (int r = 0; r < 3; ++r) chat.emplace_back(seed + r, 5, 0);
    std::vector<Process*> procs{&chat[0], &chat[1], &chat[2]};
    SimNetwork net(sim_config(3, 1, 7, seed));
    std::vector<std::uint64_t> trace;
    run_simulation(procs, net, 1000, [&](Tick, const SimNetwork& n) { trace.push_back(n.in_flight_messages()); });
    return trace;
  };
  CHECK(run(11) == run(11));
  CHECK(run(11) != run(12));
}

TEST_CASE("tick cap stops a run that never ends") {
  Chatter forever(1, 1, 1000);
  std::vector<Process*> procs{&forever};
  auto cfg = sim_config(1, 1, 1, 0);
  cfg.tick_cap = 50;
  const auto out = run_simulation(procs, cfg);
  CHECK(out.tick_cap_hit);
  CHECK_FALSE(out.all_terminated);
  CHECK(out.ticks == 50);
}

TEST_CASE("threaded network keeps channel order and counts") {
  ThreadNetwork net(2);
  constexpr VertexId kCount = 20000;
  std::thread producer([&] {
    for (VertexId i = 0; i < kCount; ++i) net.endpoint(0).send(1, update(i));
  });
  VertexId expected = 0;
  while (expected < kCount) {
    for (const auto& m : net.endpoint(1).poll()) {
      REQUIRE(std::get<DistUpdate>(m.payload).vertex == expected);
      ++expected;
    }
  }
  producer.join();
  CHECK(net.in_flight_updates() == 0);
  CHECK(net.updates_sent() == kCount);
}
