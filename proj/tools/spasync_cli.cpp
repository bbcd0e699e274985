// Command-line front end: graph generation, single runs, oracle checks,
// benchmark plans and pruning statistics.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include "spasync/bench.hpp"
#include "spasync/graph_io.hpp"
#include "spasync/oracle.hpp"
#include "spasync/partition.hpp"
#include "spasync/rmat.hpp"
#include "spasync/trishla.hpp"

namespace {

using namespace spasync;

struct RunArgs {
  std::string graph;
  std::string source = "max_degree";
  std::size_t parts = 1;
  std::string term = "token_ring";
  std::string mode = "sim";
  std::uint64_t seed = 1;
  Tick min_delay = 1;
  Tick max_delay = 4;
  bool no_prune = false;
  std::string dist_out;
};

void add_run_options(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--graph", args.graph, "edge-list file, .gr file, or rmat:scale=S,edge_factor=F,seed=K")
      ->required();
  cmd->add_option("--source", args.source, "source vertex id or max_degree");
  cmd->add_option("--parts", args.parts, "number of logical processes")->check(CLI::PositiveNumber);
  cmd->add_option("--term", args.term, "termination detector")
      ->check(CLI::IsMember({"token_ring", "count_heuristic", "count_heuristic_literal"}));
  cmd->add_option("--mode", args.mode, "transport")->check(CLI::IsMember({"sim", "threads"}));
  cmd->add_option("--seed", args.seed, "transport seed");
  cmd->add_option("--min-delay", args.min_delay, "minimum simulated delay in ticks");
  cmd->add_option("--max-delay", args.max_delay, "maximum simulated delay in ticks");
  cmd->add_flag("--no-prune", args.no_prune, "disable triangle pruning");
  cmd->add_option("--dist-out", args.dist_out, "write 'v dist' lines to this file");
}

RunOutput execute(const RunArgs& args, const Graph& g, const std::string& graph_id) {
  RunSettings s;
  s.n_parts = args.parts;
  s.termination = *parse_termination_mode(args.term);
  s.mode = args.mode == "sim" ? TransportMode::simulated : TransportMode::threaded;
  s.seed = args.seed;
  s.min_delay = args.min_delay;
  s.max_delay = args.max_delay;
  s.prune = !args.no_prune;
  const VertexId source = args.source == "max_degree" ? max_out_degree_vertex(g)
                                                      : static_cast<VertexId>(std::stoul(args.source));
  auto out = run_once(g, graph_id, source, s);
  if (!args.dist_out.empty()) {
    std::ofstream f(args.dist_out);
    if (!f) throw std::runtime_error("cannot write " + args.dist_out);
    write_distances(out.result.dist, f);
  }
  return out;
}

int cmd_verify(const RunArgs& args) {
  std::string graph_id;
  const auto g = resolve_graph(args.graph, graph_id);
  const auto out = execute(args, g, graph_id);
  std::cout << kReportHeader << '\n' << to_csv_row(out.report) << '\n';
  if (out.report.oracle_match) {
    std::cerr << "verify: distances match the oracle\n";
    return 0;
  }
  const VertexId source = args.source == "max_degree" ? max_out_degree_vertex(g)
                                                      : static_cast<VertexId>(std::stoul(args.source));
  const auto oracle = dijkstra_seq(g, source);
  std::size_t diff = 0;
  for (std::size_t v = 0; v < oracle.dist.size(); ++v) diff += oracle.dist[v] != out.result.dist[v];
  std::cerr << "verify: " << diff << " of " << oracle.dist.size() << " distances differ from the oracle\n";
  return 1;
}

int cmd_prune_stats(const std::string& graph_spec, std::size_t parts) {
  std::string graph_id;
  const auto g = resolve_graph(graph_spec, graph_id);
  std::cout << "part,edges_before,edges_after,removed,removed_pct\n";
  std::size_t before_total = 0;
  std::size_t removed_total = 0;
  for (const auto& part : partition_graph(g, parts)) {
    const auto before = part.n_edges();
    const auto [pruned, removed] = prune_full(part);
    before_total += before;
    removed_total += removed;
    const double pct = before ? 100.0 * static_cast<double>(removed) / static_cast<double>(before) : 0.0;
    std::cout << part.part_id() << ',' << before << ',' << pruned.n_edges() << ',' << removed << ','
              << std::fixed << std::setprecision(2) << pct << '\n';
  }
  const double pct = before_total ? 100.0 * static_cast<double>(removed_total) / static_cast<double>(before_total) : 0.0;
  std::cout << "all," << before_total << ',' << before_total - removed_total << ',' << removed_total << ','
            << std::fixed << std::setprecision(2) << pct << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous distributed single-source shortest paths"};
  app.require_subcommand(1);

  GenSpec gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate an RMAT graph as an edge list");
  gen_cmd->add_option("--scale", gen.scale, "log2 of the vertex count")->required();
  gen_cmd->add_option("--edge-factor", gen.edge_factor, "arcs per vertex")->required();
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--weight-lo", gen.weight_lo, "smallest weight");
  gen_cmd->add_option("--weight-hi", gen.weight_hi, "weights are below this bound");
  gen_cmd->add_option("-o,--output", gen_out, "output file")->required();

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "solve once and print a report row");
  add_run_options(run_cmd, run_args);

  RunArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "solve once and exit nonzero on an oracle mismatch");
  add_run_options(verify_cmd, verify_args);

  std::string plan_path;
  std::string bench_out;
  std::string summary_out;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark plan");
  bench_cmd->add_option("--plan", plan_path, "plan file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("-o,--output", bench_out, "per-trial results CSV")->required();
  bench_cmd->add_option("--summary", summary_out, "summary CSV (default: stdout)");

  std::string prune_graph;
  std::size_t prune_parts = 1;
  auto* prune_cmd = app.add_subcommand("prune-stats", "report triangle pruning per partition");
  prune_cmd->add_option("--graph", prune_graph, "graph file or rmat spec")->required();
  prune_cmd->add_option("--parts", prune_parts, "number of partitions")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      save_edgelist(generate_rmat(gen), gen_out);
      return 0;
    }
    if (run_cmd->parsed()) {
      std::string graph_id;
      const auto g = resolve_graph(run_args.graph, graph_id);
      const auto out = execute(run_args, g, graph_id);
      std::cout << kReportHeader << '\n' << to_csv_row(out.report) << '\n';
      return 0;
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_args);
    if (bench_cmd->parsed()) {
      const auto plan = load_plan(plan_path);
      const auto reports = run_experiment(plan, [](const RunReport& r) {
        std::cerr << r.graph_id << " p=" << r.p << ' ' << r.term_mode << " trial=" << r.trial
                  << " wall=" << r.wall << ' ' << r.verdict << (r.oracle_match ? "" : " MISMATCH") << '\n';
      });
      std::ofstream out(bench_out);
      if (!out) throw std::runtime_error("cannot write " + bench_out);
      write_reports(out, reports);
      const auto rows = summarize(reports);
      if (summary_out.empty()) {
        write_summary(std::cout, rows);
      } else {
        std::ofstream s(summary_out);
        write_summary(s, rows);
      }
      return 0;
    }
    if (prune_cmd->parsed()) return cmd_prune_stats(prune_graph, prune_parts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
