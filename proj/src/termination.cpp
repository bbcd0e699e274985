#include "spasync/termination.hpp"

#include <algorithm>
#include <string>

namespace spasync {

std::string_view to_string(TerminationMode mode) noexcept {
  switch (mode) {
    case TerminationMode::token_ring: return "token_ring";
    case TerminationMode::count_heuristic: return "count_heuristic";
    case TerminationMode::count_heuristic_literal: return "count_heuristic_literal";
  }
  return "unknown";
}

std::optional<TerminationMode> parse_termination_mode(std::string_view text) noexcept {
  for (auto mode : {TerminationMode::token_ring, TerminationMode::count_heuristic,
                    TerminationMode::count_heuristic_literal}) {
    if (text == to_string(mode)) return mode;
  }
  return std::nullopt;
}

TermState on_send(TermState ts) noexcept {
  ts.color = Color::black;
  --ts.counter;
  return ts;
}

TermState on_recv(TermState ts) noexcept {
  ts.color = Color::black;
  ++ts.counter;
  ++ts.received;
  return ts;
}

void on_token(TermState& ts, const Message& msg) {
  if (ts.red_seen) throw ProtocolError("token received after red");
  if (std::holds_alternative<RedToken>(msg.payload)) {
    ts.red_seen = true;
    return;
  }
  const auto* tok = std::get_if<Token>(&msg.payload);
  if (tok == nullptr) return;
  if (ts.holds_token) throw ProtocolError("second token received while holding one");
  ts.holds_token = true;
  ts.token_color = tok->color;
  ts.token_count = tok->count;
}

namespace {

Rank next_rank(Rank rank, std::size_t n_parts) { return static_cast<Rank>((rank + 1) % n_parts); }

void launch_round(TermState& ts, Endpoint& ep, std::size_t n_parts) {
  ts.color = Color::white;
  ts.round_in_flight = true;
  ++ts.rounds_started;
  ep.send(next_rank(0, n_parts), Message{0, 0, Token{Color::white, 0}});
}

}  // namespace

TermVerdict token_step(TermState& ts, Rank rank, std::size_t n_parts, Endpoint& ep, bool is_idle) {
  if (ts.red_seen) {
    if (rank + 1 < n_parts) ep.send(rank + 1, Message{0, 0, RedToken{}});
    return {.terminated = true, .clean = true};
  }
  if (!is_idle) return {};

  if (n_parts == 1) {
    if (ts.counter == 0) return {.terminated = true, .clean = true, .announced = true};
    return {};
  }

  if (rank == 0) {
    if (ts.holds_token) {
      ts.holds_token = false;
      ts.round_in_flight = false;
      if (ts.token_color == Color::white && ts.color == Color::white && ts.token_count + ts.counter == 0) {
        ep.send(1, Message{0, 0, RedToken{}});
        return {.terminated = true, .clean = true, .announced = true};
      }
    }
    if (!ts.round_in_flight) launch_round(ts, ep, n_parts);
    return {};
  }

  if (ts.holds_token) {
    const Color folded = (ts.token_color == Color::black || ts.color == Color::black) ? Color::black : Color::white;
    ep.send(next_rank(rank, n_parts), Message{0, 0, Token{folded, ts.token_count + ts.counter}});
    ts.holds_token = false;
    ts.color = Color::white;
  }
  return {};
}

TermVerdict heuristic_step(const TermState& ts, const Partition& part, std::size_t n_parts) noexcept {
  bool stop = false;
  if (ts.mode == TerminationMode::count_heuristic) {
    stop = ts.idle_polls >= n_parts * std::max<std::size_t>(1, part.n_interedges());
  } else if (ts.mode == TerminationMode::count_heuristic_literal) {
    stop = ts.received >= n_parts * part.n_interedges();
  }
  return {.terminated = stop, .clean = false};
}

}  // namespace spasync
