#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spasync/engine.hpp"
#include "spasync/graph.hpp"

namespace spasync {

/// One solver run, as written to the results CSV.
struct RunReport {
  std::string graph_id;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t p = 0;
  std::string term_mode;
  std::uint64_t trial = 0;
  // Scheduler ticks (simulated) or seconds (threaded).
  double wall = 0.0;
  std::uint64_t updates = 0;
  std::uint64_t relax = 0;
  // Threaded runs only.
  std::optional<double> mteps;
  std::string verdict;
  bool oracle_match = false;
  std::uint64_t pruned_edges = 0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline constexpr const char* kReportHeader =
    "graph_id,n,m,p,term_mode,trial,wall,updates,relax,mteps,verdict,oracle_match,pruned_edges";

std::string to_csv_row(const RunReport& r);
void write_reports(std::ostream& out, const std::vector<RunReport>& reports);
/// Throws std::runtime_error on a bad header or malformed row.
std::vector<RunReport> read_reports(std::istream& in);

/// A clean verdict disagreed with the oracle, or the simulator caught an
/// unsafe termination announcement.
class CorrectnessFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunSettings {
  std::size_t n_parts = 1;
  TerminationMode termination = TerminationMode::token_ring;
  TransportMode mode = TransportMode::simulated;
  std::uint64_t seed = 1;
  Tick min_delay = 1;
  Tick max_delay = 4;
  bool prune = true;
  Tick tick_cap = 20'000'000;
  double wall_cap_seconds = 120.0;
};

struct RunOutput {
  RunReport report;
  SolveResult result;
};

/// Solves once and compares against sequential Dijkstra. Never skips the
/// oracle check; never throws on a mismatch.
RunOutput run_once(const Graph& g, const std::string& graph_id, VertexId source, const RunSettings& settings,
                   std::uint64_t trial = 0);

struct SourcePolicy {
  // Empty means the highest-out-degree vertex.
  std::optional<VertexId> vertex;
};

struct BenchCell {
  // "rmat:scale=S,edge_factor=F,seed=K" or a graph file path.
  std::string graph;
  SourcePolicy source;
  std::vector<std::size_t> parts{1};
  std::vector<TerminationMode> term_modes{TerminationMode::token_ring};
  TransportMode mode = TransportMode::simulated;
  std::size_t trials = 5;
  std::uint64_t seed = 1;
  Tick min_delay = 1;
  Tick max_delay = 4;
  bool prune = true;
};

struct BenchPlan {
  std::vector<BenchCell> cells;
};

/// Parses the plan format: "key = value" lines, '#' comments, and "[cell]"
/// headers. Keys before the first "[cell]" are defaults for every cell.
BenchPlan parse_plan(std::istream& in);
BenchPlan load_plan(const std::filesystem::path& path);

/// Loads or generates a graph from a cell's graph field; sets graph_id.
Graph resolve_graph(const std::string& spec, std::string& graph_id);

using ProgressFn = std::function<void(const RunReport&)>;

/// Runs every (graph, P, mode) combination `trials` times with seeds
/// seed, seed+1, ... Throws CorrectnessFailure on a clean verdict that
/// disagrees with the oracle.
std::vector<RunReport> run_experiment(const BenchPlan& plan, const ProgressFn& progress = {});

struct SummaryRow {
  std::string graph_id;
  std::uint64_t p = 0;
  std::string term_mode;
  // "ticks" for simulated rows, "seconds" for threaded rows (those carry MTEPS).
  std::string clock;
  std::uint64_t trials = 0;
  double wall_mean = 0.0;
  // Mean wall at P=1 over mean wall at this P; absent without a P=1 row.
  std::optional<double> speedup;
  std::optional<double> mteps_mean;
  bool all_match = true;
};

inline constexpr const char* kSummaryHeader = "graph_id,p,term_mode,clock,trials,wall_mean,speedup,mteps_mean,oracle_match";

/// Groups reports by (graph, P, termination mode, clock) in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<RunReport>& reports);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace spasync
