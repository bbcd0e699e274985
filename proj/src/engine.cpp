#include "spasync/engine.hpp"

#include <algorithm>
#include <memory>
#include <string>

namespace spasync {

SpAsyncProcess::SpAsyncProcess(Partition part, VertexId source, EngineConfig cfg)
    : part_(std::move(part)), cfg_(cfg), dist_(part_.first(), part_.n_owned()) {
  term_.mode = cfg_.termination;
  prune_.done = !cfg_.prune;
  if (part_.owns(source)) {
    dist_.improve(source, 0);
    pq_.emplace(0, source);
    phase_ = Phase::working;
    activated_ = true;
  }
}

bool SpAsyncProcess::has_local_work() const {
  if (phase_ == Phase::terminated) return false;
  return !pq_.empty() || (!prune_.done && (!activated_ || cfg_.resume_pruning));
}

void SpAsyncProcess::absorb_messages(std::span<const Message> msgs) {
  for (const auto& msg : msgs) {
    if (const auto* up = std::get_if<DistUpdate>(&msg.payload)) {
      if (!part_.owns(up->vertex)) {
        throw ProtocolError("rank " + std::to_string(part_.part_id()) + " got an update for vertex " +
                            std::to_string(up->vertex) + " it does not own");
      }
      ++msg_count_;
      term_ = on_recv(term_);
      got_update_ = true;
      if (dist_.improve(up->vertex, up->dist)) pq_.emplace(up->dist, up->vertex);
    } else {
      on_token(term_, msg);
    }
  }
  if (got_update_) {
    activated_ = true;
    phase_ = Phase::working;
  }
}

void SpAsyncProcess::dijkstra_drain(Endpoint& ep) {
  const auto& layout = part_.layout();
  while (!pq_.empty()) {
    const auto [d, u] = pq_.top();
    pq_.pop();
    if (d > dist_.get(u)) continue;
    ++pops_;
    if (cfg_.record_pops) pop_order_.push_back(u);
    part_.for_each_arc(u, [&](const Arc& a) {
      ++relax_attempts_;
      const Dist cand = d + a.weight;
      if (part_.owns(a.target)) {
        if (dist_.improve(a.target, cand)) pq_.emplace(cand, a.target);
      } else {
        term_ = on_send(term_);
        ++sent_count_;
        ep.send(layout.owner(a.target), Message{0, 0, DistUpdate{a.target, cand}});
      }
    });
  }
}

StepOutcome SpAsyncProcess::step(Endpoint& ep) {
  if (phase_ == Phase::terminated) return {.terminated = true};

  got_update_ = false;
  absorb_messages(ep.poll());
  if (got_update_) term_.idle_polls = 0;

  if (!pq_.empty()) {
    dijkstra_drain(ep);
    return {};
  }
  if (!prune_.done && (!activated_ || cfg_.resume_pruning)) {
    prune_ = prune_step(part_, prune_, cfg_.prune_budget);
    return {};
  }

  phase_ = Phase::probing_termination;
  if (term_.mode == TerminationMode::token_ring) {
    verdict_ = token_step(term_, part_.part_id(), part_.layout().n_parts(), ep, true);
  } else {
    if (!got_update_) ++term_.idle_polls;
    verdict_ = heuristic_step(term_, part_, part_.layout().n_parts());
  }
  if (!verdict_.terminated) return {};
  phase_ = Phase::terminated;
  return {.terminated = true, .announced_clean = verdict_.announced};
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::clean: return "clean";
    case Verdict::heuristic: return "heuristic";
    case Verdict::tick_cap: return "tick_cap";
  }
  return "unknown";
}

std::optional<Verdict> parse_verdict(std::string_view text) noexcept {
  for (auto v : {Verdict::clean, Verdict::heuristic, Verdict::tick_cap}) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

SolveResult solve(const Graph& g, VertexId source, const SolveConfig& cfg) {
  if (source >= g.n_vertices()) throw GraphError("source " + std::to_string(source) + " out of range");
  auto parts = partition_graph(g, cfg.n_parts);
  std::vector<std::unique_ptr<SpAsyncProcess>> procs;
  std::vector<Process*> handles;
  for (auto& part : parts) {
    procs.push_back(std::make_unique<SpAsyncProcess>(std::move(part), source, cfg.engine));
    handles.push_back(procs.back().get());
  }

  SolveResult res;
  bool finished = false;
  auto transport = cfg.transport;
  transport.n_parts = cfg.n_parts;
  if (transport.mode == TransportMode::simulated) {
    SimNetwork net(transport);
    const auto out = run_simulation(handles, net, transport.tick_cap);
    finished = out.all_terminated;
    res.ticks = out.ticks;
    res.updates_sent = out.updates_sent;
    res.messages_sent = out.messages_sent;
    res.safety_violations = out.safety_violations;
    res.quiescent_tick = out.quiescent_tick;
    res.in_flight_at_end = out.in_flight_at_end;
  } else {
    ThreadNetwork net(cfg.n_parts);
    const auto out = run_threads(handles, net, transport.wall_cap_seconds);
    finished = out.all_terminated;
    res.seconds = out.seconds;
    res.updates_sent = out.updates_sent;
    res.messages_sent = out.messages_sent;
    res.safety_violations = out.safety_violations;
    res.in_flight_at_end = net.in_flight_updates();
  }

  bool all_clean = true;
  res.dist.assign(g.n_vertices(), kInfinity);
  for (const auto& p : procs) {
    const auto& part = p->partition();
    const auto values = p->dist().values();
    std::copy(values.begin(), values.end(), res.dist.begin() + part.first());
    res.relax_attempts += p->relax_attempts();
    res.pops += p->pops();
    res.pruned_edges += p->prune_state().removed;
    all_clean = all_clean && p->verdict().clean;
  }
  if (!finished) {
    res.verdict = Verdict::tick_cap;
  } else {
    res.verdict = all_clean ? Verdict::clean : Verdict::heuristic;
  }
  return res;
}

}  // namespace spasync
