#include <doctest.h>

#include <cmath>
#include <sstream>

#include "spasync/bench.hpp"
#include "spasync/rmat.hpp"

using namespace spasync;

TEST_CASE("RMAT sizes follow scale and edge factor") {
  GenSpec spec;
  spec.scale = 10;
  spec.edge_factor = 16;
  const auto g = generate_rmat(spec);
  CHECK(g.n_vertices() == 1024);
  CHECK(g.n_edges() == 16384);
  for (const auto& e : g.edges()) {
    CHECK(e.source != e.target);
    CHECK(e.weight >= 1);
    CHECK(e.weight <= 19);
  }
}

TEST_CASE("RMAT is deterministic per seed") {
  GenSpec spec;
  spec.scale = 8;
  spec.seed = 99;
  CHECK(generate_rmat(spec).edges() == generate_rmat(spec).edges());
  auto other = spec;
  other.seed = 100;
  CHECK(generate_rmat(spec).edges() != generate_rmat(other).edges());
}

TEST_CASE("uniform quadrants give a uniform source distribution") {
  GenSpec spec;
  spec.scale = 12;
  spec.edge_factor = 16;
  spec.a = spec.b = spec.c = spec.d = 0.25;
  const auto g = generate_rmat(spec);
  const double n = static_cast<double>(g.n_vertices());
  const double expected = static_cast<double>(g.n_edges()) / n;
  double chi2 = 0.0;
  for (VertexId u = 0; u < g.n_vertices(); ++u) {
    const double diff = static_cast<double>(g.out_degree(u)) - expected;
    chi2 += diff * diff / expected;
  }
  // Chi-square with n-1 degrees of freedom: mean n-1, sd sqrt(2(n-1)).
  CHECK(std::abs(chi2 - (n - 1)) < 5.0 * std::sqrt(2.0 * (n - 1)));
}

TEST_CASE("skewed quadrants give a skewed degree distribution") {
  GenSpec spec;
  spec.scale = 12;
  const auto g = generate_rmat(spec);
  std::size_t max_degree = 0;
  for (VertexId u = 0; u < g.n_vertices(); ++u) max_degree = std::max(max_degree, g.out_degree(u));
  CHECK(max_degree > 10 * spec.edge_factor);
}

TEST_CASE("invalid generator specs are rejected") {
  GenSpec bad;
  bad.a = 0.5;
  CHECK_THROWS_AS(generate_rmat(bad), std::invalid_argument);
  GenSpec weights;
  weights.weight_lo = 0;
  CHECK_THROWS_AS(generate_rmat(weights), std::invalid_argument);
  GenSpec empty_range;
  empty_range.weight_hi = 1;
  CHECK_THROWS_AS(generate_rmat(empty_range), std::invalid_argument);
  GenSpec zero_scale;
  zero_scale.scale = 0;
  CHECK_THROWS_AS(generate_rmat(zero_scale), std::invalid_argument);
}

TEST_CASE("report CSV round-trips") {
  RunReport sim{"g1", 256, 2048, 4, "token_ring", 2, 1234, 99, 4000, std::nullopt, "clean", true, 17};
  RunReport threads{"g,2", 10, 20, 2, "count_heuristic", 0, 0.0123456789, 5, 40, 3.25, "heuristic", false, 0};
  threads.graph_id = "g2";
  const std::vector<RunReport> reports{sim, threads};
  std::stringstream buf;
  write_reports(buf, reports);
  CHECK(buf.str().rfind(std::string(kReportHeader) + "\n", 0) == 0);
  CHECK(read_reports(buf) == reports);
  CHECK(to_csv_row(sim) == "g1,256,2048,4,token_ring,2,1234,99,4000,,clean,true,17");
}

TEST_CASE("report reader rejects malformed input") {
  std::istringstream wrong_header("a,b,c\n");
  CHECK_THROWS(read_reports(wrong_header));
  std::istringstream short_row(std::string(kReportHeader) + "\ng1,1,2\n");
  CHECK_THROWS(read_reports(short_row));
}

TEST_CASE("summary aggregation") {
  CHECK(summarize({}).empty());

  RunReport r{"g", 8, 16, 1, "token_ring", 0, 100, 0, 0, std::nullopt, "clean", true, 0};
  auto one = summarize({r});
  REQUIRE(one.size() == 1);
  CHECK(one[0].wall_mean == 100);
  CHECK(one[0].trials == 1);
  CHECK(one[0].speedup == 1.0);
  CHECK_FALSE(one[0].mteps_mean.has_value());

  auto r2 = r;
  r2.trial = 1;
  r2.wall = 300;
  auto fast = r;
  fast.p = 2;
  fast.wall = 50;
  fast.oracle_match = false;
  const auto rows = summarize({r, r2, fast});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].wall_mean == 200);
  CHECK(rows[0].trials == 2);
  CHECK(rows[1].speedup == 4.0);
  CHECK(rows[0].all_match);
  CHECK_FALSE(rows[1].all_match);

  auto t1 = r;
  t1.mteps = 2.0;
  auto t2 = r2;
  t2.mteps = 4.0;
  const auto timed = summarize({t1, t2});
  CHECK(timed[0].mteps_mean == 3.0);
  CHECK(timed[0].clock == "seconds");

  // Ticks and seconds for the same cell stay in separate rows.
  const auto mixed = summarize({r, t1});
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].clock == "ticks");
  CHECK(mixed[1].clock == "seconds");
}

TEST_CASE("plan parser") {
  std::istringstream in(R"(# defaults
trials = 2
term = token_ring, count_heuristic
[cell]
graph = rmat:scale=6,edge_factor=4,seed=3
parts = 1,2
[cell]
graph = "some/file.el"
source = 5
mode = threads
trials = 1
)");
  const auto plan = parse_plan(in);
  REQUIRE(plan.cells.size() == 2);
  CHECK(plan.cells[0].trials == 2);
  CHECK(plan.cells[0].parts == std::vector<std::size_t>{1, 2});
  CHECK(plan.cells[0].term_modes.size() == 2);
  CHECK_FALSE(plan.cells[0].source.vertex.has_value());
  CHECK(plan.cells[1].graph == "some/file.el");
  CHECK(plan.cells[1].source.vertex == 5u);
  CHECK(plan.cells[1].mode == TransportMode::threaded);
  CHECK(plan.cells[1].trials == 1);

  std::istringstream bad("[cell]\ngraph = x\nfrobnicate = 1\n");
  CHECK_THROWS_WITH(parse_plan(bad), doctest::Contains("line 3"));
  std::istringstream no_graph("[cell]\ntrials = 1\n");
  CHECK_THROWS(parse_plan(no_graph));
}

TEST_CASE("experiment yields one row per cell and trial") {
  BenchPlan plan;
  BenchCell cell;
  cell.graph = "rmat:scale=7,edge_factor=8,seed=2";
  cell.parts = {1, 2, 4};
  cell.trials = 1;
  plan.cells.push_back(cell);
  const auto reports = run_experiment(plan);
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.oracle_match);
    CHECK(r.verdict == "clean");
    CHECK(r.n == 128);
    CHECK(r.m == 1024);
  }
  CHECK(reports[0].pruned_edges == 0);  // the source owner never prunes
  CHECK(summarize(reports).size() == 3);
}

TEST_CASE("pruned_edges sums per-rank removals") {
  GenSpec gen;
  gen.scale = 7;
  gen.edge_factor = 32;
  const auto g = generate_rmat(gen);
  RunSettings s;
  s.n_parts = 4;
  const auto out = run_once(g, "dense", max_out_degree_vertex(g), s);
  CHECK(out.report.pruned_edges == out.result.pruned_edges);
  CHECK(out.report.oracle_match);
}

TEST_CASE("threaded runs report MTEPS") {
  GenSpec gen;
  gen.scale = 8;
  const auto g = generate_rmat(gen);
  RunSettings s;
  s.n_parts = 2;
  s.mode = TransportMode::threaded;
  const auto out = run_once(g, "t", 0, s);
  REQUIRE(out.report.mteps.has_value());
  CHECK(*out.report.mteps > 0.0);
  CHECK(out.report.oracle_match);
}

TEST_CASE("graph specs resolve to generated graphs") {
  std::string id;
  const auto g = resolve_graph("rmat:scale=5,edge_factor=2,seed=4", id);
  CHECK(id == "rmat-s5-e2-k4");
  CHECK(g.n_vertices() == 32);
  CHECK_THROWS(resolve_graph("rmat:scale=5,colour=2", id));
}
