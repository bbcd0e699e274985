#include "spasync/bench.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <tuple>
#include <ostream>
#include <sstream>
#include <string_view>

#include "spasync/graph_io.hpp"
#include "spasync/oracle.hpp"
#include "spasync/rmat.hpp"

namespace spasync {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw std::runtime_error("bad boolean '" + std::string(text) + "'");
}

TransportMode parse_mode(std::string_view text) {
  if (text == "sim") return TransportMode::simulated;
  if (text == "threads") return TransportMode::threaded;
  throw std::runtime_error("unknown mode '" + std::string(text) + "' (sim|threads)");
}

TerminationMode parse_term(std::string_view text) {
  if (auto mode = parse_termination_mode(text)) return *mode;
  throw std::runtime_error("unknown termination mode '" + std::string(text) + "'");
}

}  // namespace

std::string to_csv_row(const RunReport& r) {
  std::ostringstream out;
  out << r.graph_id << ',' << r.n << ',' << r.m << ',' << r.p << ',' << r.term_mode << ',' << r.trial << ','
      << format_double(r.wall) << ',' << r.updates << ',' << r.relax << ','
      << (r.mteps ? format_double(*r.mteps) : std::string()) << ',' << r.verdict << ','
      << (r.oracle_match ? "true" : "false") << ',' << r.pruned_edges;
  return out.str();
}

void write_reports(std::ostream& out, const std::vector<RunReport>& reports) {
  out << kReportHeader << '\n';
  for (const auto& r : reports) out << to_csv_row(r) << '\n';
}

std::vector<RunReport> read_reports(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kReportHeader) {
    throw std::runtime_error("missing or unexpected report header");
  }
  std::vector<RunReport> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 13) throw std::runtime_error("report row has " + std::to_string(f.size()) + " fields");
    RunReport r;
    r.graph_id = f[0];
    r.n = parse_number<std::uint64_t>(f[1], "n");
    r.m = parse_number<std::uint64_t>(f[2], "m");
    r.p = parse_number<std::uint64_t>(f[3], "p");
    r.term_mode = f[4];
    r.trial = parse_number<std::uint64_t>(f[5], "trial");
    r.wall = parse_number<double>(f[6], "wall");
    r.updates = parse_number<std::uint64_t>(f[7], "updates");
    r.relax = parse_number<std::uint64_t>(f[8], "relax");
    if (!f[9].empty()) r.mteps = parse_number<double>(f[9], "mteps");
    r.verdict = f[10];
    r.oracle_match = parse_bool(f[11]);
    r.pruned_edges = parse_number<std::uint64_t>(f[12], "pruned_edges");
    out.push_back(std::move(r));
  }
  return out;
}

RunOutput run_once(const Graph& g, const std::string& graph_id, VertexId source, const RunSettings& settings,
                   std::uint64_t trial) {
  SolveConfig cfg;
  cfg.n_parts = settings.n_parts;
  cfg.engine.termination = settings.termination;
  cfg.engine.prune = settings.prune;
  cfg.transport.mode = settings.mode;
  cfg.transport.seed = settings.seed;
  cfg.transport.min_delay = settings.min_delay;
  cfg.transport.max_delay = settings.max_delay;
  cfg.transport.tick_cap = settings.tick_cap;
  cfg.transport.wall_cap_seconds = settings.wall_cap_seconds;

  RunOutput out;
  out.result = solve(g, source, cfg);
  const auto oracle = dijkstra_seq(g, source);

  auto& r = out.report;
  r.graph_id = graph_id;
  r.n = g.n_vertices();
  r.m = g.n_edges();
  r.p = settings.n_parts;
  r.term_mode = to_string(settings.termination);
  r.trial = trial;
  r.updates = out.result.updates_sent;
  r.relax = out.result.relax_attempts;
  if (settings.mode == TransportMode::simulated) {
    r.wall = static_cast<double>(out.result.ticks);
  } else {
    r.wall = out.result.seconds;
    if (out.result.seconds > 0) r.mteps = static_cast<double>(r.relax) / out.result.seconds / 1e6;
  }
  r.verdict = to_string(out.result.verdict);
  r.oracle_match = out.result.dist == oracle.dist;
  r.pruned_edges = out.result.pruned_edges;
  return out;
}

BenchPlan parse_plan(std::istream& in) {
  BenchPlan plan;
  BenchCell defaults;
  BenchCell* target = &defaults;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    try {
      if (line == "[cell]") {
        plan.cells.push_back(defaults);
        target = &plan.cells.back();
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw std::runtime_error("expected 'key = value'");
      const auto key = trim(line.substr(0, eq));
      auto value = trim(line.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      auto& cell = *target;
      if (key == "graph") {
        cell.graph = value;
      } else if (key == "source") {
        cell.source.vertex = value == "max_degree" ? std::nullopt
                                                   : std::optional(parse_number<VertexId>(value, "source"));
      } else if (key == "parts") {
        cell.parts.clear();
        for (auto p : split(value, ',')) cell.parts.push_back(parse_number<std::size_t>(trim(p), "parts"));
      } else if (key == "term") {
        cell.term_modes.clear();
        for (auto t : split(value, ',')) cell.term_modes.push_back(parse_term(trim(t)));
      } else if (key == "mode") {
        cell.mode = parse_mode(value);
      } else if (key == "trials") {
        cell.trials = parse_number<std::size_t>(value, "trials");
        if (cell.trials < 1) throw std::runtime_error("trials must be >= 1");
      } else if (key == "seed") {
        cell.seed = parse_number<std::uint64_t>(value, "seed");
      } else if (key == "min_delay") {
        cell.min_delay = parse_number<Tick>(value, "min_delay");
      } else if (key == "max_delay") {
        cell.max_delay = parse_number<Tick>(value, "max_delay");
      } else if (key == "prune") {
        cell.prune = parse_bool(value);
      } else {
        throw std::runtime_error("unknown key '" + std::string(key) + "'");
      }
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("plan line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (plan.cells.empty() && !defaults.graph.empty()) plan.cells.push_back(defaults);
  for (const auto& cell : plan.cells) {
    if (cell.graph.empty()) throw std::runtime_error("plan cell without a graph");
  }
  return plan;
}

BenchPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan " + path.string());
  return parse_plan(in);
}

Graph resolve_graph(const std::string& spec, std::string& graph_id) {
  constexpr std::string_view prefix = "rmat:";
  if (!spec.starts_with(prefix)) {
    graph_id = std::filesystem::path(spec).filename().string();
    return load_graph(spec);
  }
  GenSpec gen;
  for (auto kv : split(std::string_view(spec).substr(prefix.size()), ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) throw std::runtime_error("bad rmat parameter '" + std::string(kv) + "'");
    const auto key = trim(kv.substr(0, eq));
    const auto value = trim(kv.substr(eq + 1));
    if (key == "scale") {
      gen.scale = parse_number<unsigned>(value, "scale");
    } else if (key == "edge_factor") {
      gen.edge_factor = parse_number<unsigned>(value, "edge_factor");
    } else if (key == "seed") {
      gen.seed = parse_number<std::uint64_t>(value, "seed");
    } else {
      throw std::runtime_error("unknown rmat parameter '" + std::string(key) + "'");
    }
  }
  graph_id = "rmat-s" + std::to_string(gen.scale) + "-e" + std::to_string(gen.edge_factor) + "-k" +
             std::to_string(gen.seed);
  return generate_rmat(gen);
}

std::vector<RunReport> run_experiment(const BenchPlan& plan, const ProgressFn& progress) {
  std::vector<RunReport> reports;
  for (const auto& cell : plan.cells) {
    std::string graph_id;
    const auto g = resolve_graph(cell.graph, graph_id);
    const VertexId source = cell.source.vertex.value_or(max_out_degree_vertex(g));
    for (auto term : cell.term_modes) {
      for (auto p : cell.parts) {
        for (std::size_t trial = 0; trial < cell.trials; ++trial) {
          RunSettings s;
          s.n_parts = p;
          s.termination = term;
          s.mode = cell.mode;
          s.seed = cell.seed + trial;
          s.min_delay = cell.min_delay;
          s.max_delay = cell.max_delay;
          s.prune = cell.prune;
          auto out = run_once(g, graph_id, source, s, trial);
          if (out.result.safety_violations != 0) {
            throw CorrectnessFailure(graph_id + " p=" + std::to_string(p) +
                                     ": termination announced with work outstanding");
          }
          if (out.result.verdict == Verdict::clean && !out.report.oracle_match) {
            throw CorrectnessFailure(graph_id + " p=" + std::to_string(p) + " trial=" + std::to_string(trial) +
                                     ": clean termination but distances differ from the oracle");
          }
          if (progress) progress(out.report);
          reports.push_back(std::move(out.report));
        }
      }
    }
  }
  return reports;
}

std::vector<SummaryRow> summarize(const std::vector<RunReport>& reports) {
  struct Acc {
    SummaryRow row;
    double wall_sum = 0.0;
    double mteps_sum = 0.0;
    std::uint64_t mteps_n = 0;
  };
  std::vector<Acc> groups;
  std::map<std::tuple<std::string, std::uint64_t, std::string, std::string>, std::size_t> index;
  for (const auto& r : reports) {
    const std::string clock = r.mteps ? "seconds" : "ticks";
    const auto key = std::make_tuple(r.graph_id, r.p, r.term_mode, clock);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, groups.size()).first;
      Acc acc;
      acc.row.graph_id = r.graph_id;
      acc.row.p = r.p;
      acc.row.term_mode = r.term_mode;
      acc.row.clock = clock;
      groups.push_back(std::move(acc));
    }
    auto& acc = groups[it->second];
    ++acc.row.trials;
    acc.wall_sum += r.wall;
    if (r.mteps) {
      acc.mteps_sum += *r.mteps;
      ++acc.mteps_n;
    }
    acc.row.all_match = acc.row.all_match && r.oracle_match;
  }

  std::vector<SummaryRow> rows;
  for (auto& acc : groups) {
    acc.row.wall_mean = acc.wall_sum / static_cast<double>(acc.row.trials);
    if (acc.mteps_n) acc.row.mteps_mean = acc.mteps_sum / static_cast<double>(acc.mteps_n);
    rows.push_back(acc.row);
  }
  for (auto& row : rows) {
    const auto base = index.find(std::make_tuple(row.graph_id, std::uint64_t{1}, row.term_mode, row.clock));
    if (base != index.end() && row.wall_mean > 0) {
      row.speedup = groups[base->second].wall_sum / static_cast<double>(groups[base->second].row.trials) /
                    row.wall_mean;
    }
  }
  return rows;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.graph_id << ',' << r.p << ',' << r.term_mode << ',' << r.clock << ',' << r.trials << ',' << format_double(r.wall_mean)
        << ',' << (r.speedup ? format_double(*r.speedup) : std::string()) << ','
        << (r.mteps_mean ? format_double(*r.mteps_mean) : std::string()) << ','
        << (r.all_match ? "true" : "false") << '\n';
  }
}

}  // namespace spasync
