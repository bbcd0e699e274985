#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "spasync/partition.hpp"
#include "spasync/transport.hpp"

namespace spasync {

enum class TerminationMode {
  // White/black token ring with message counters; red token announces the end.
  token_ring,
  // Idle-poll timeout of P * max(1, inter-edges) consecutive empty polls.
  count_heuristic,
  // Stops once received updates reach P * inter-edges.
  count_heuristic_literal,
};

[[nodiscard]] std::string_view to_string(TerminationMode mode) noexcept;
[[nodiscard]] std::optional<TerminationMode> parse_termination_mode(std::string_view text) noexcept;

struct TermState {
  TerminationMode mode = TerminationMode::token_ring;
  Color color = Color::white;
  // Received minus sent distance updates; never reset.
  std::int64_t counter = 0;
  std::uint64_t received = 0;
  bool holds_token = false;
  Color token_color = Color::white;
  std::int64_t token_count = 0;
  bool red_seen = false;
  // Rank 0 only: a token it launched has not yet come back.
  bool round_in_flight = false;
  std::uint64_t rounds_started = 0;
  std::uint64_t idle_polls = 0;
};

struct TermVerdict {
  bool terminated = false;
  // Backed by the token protocol. Heuristic verdicts are never clean.
  bool clean = false;
  // This rank launched the red token.
  bool announced = false;
};

[[nodiscard]] TermState on_send(TermState ts) noexcept;
[[nodiscard]] TermState on_recv(TermState ts) noexcept;

/// Records receipt of a Token or RedToken. Throws ProtocolError for a token
/// arriving after red, or a second token while one is held.
void on_token(TermState& ts, const Message& msg);

/// One detector quantum of the token ring.
///
/// Rank 0 launches a (white, 0) token when idle and no round is out. A holder
/// forwards the token once idle, folding in its color and counter and then
/// whitening itself. When the token returns, rank 0 announces termination
/// with a red token if the token and rank 0 are white and the counters sum to
/// zero; otherwise it starts a new round. Red travels 0 -> 1 -> ... -> P-1.
TermVerdict token_step(TermState& ts, Rank rank, std::size_t n_parts, Endpoint& ep, bool is_idle);

/// Timeout check for the count heuristics. The caller counts idle polls.
[[nodiscard]] TermVerdict heuristic_step(const TermState& ts, const Partition& part, std::size_t n_parts) noexcept;

}  // namespace spasync
