#include "spasync/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace spasync {

namespace {

class Tokens {
 public:
  Tokens(std::string_view line, std::size_t line_no) : rest_(line), line_no_(line_no) {}

  std::string_view next_word() {
    skip_space();
    const auto end = rest_.find_first_of(" \t\r");
    auto word = rest_.substr(0, end);
    rest_.remove_prefix(word.size());
    return word;
  }

  std::uint64_t next_uint(const char* what) {
    const auto word = next_word();
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (word.empty() || ec != std::errc{} || ptr != word.data() + word.size()) {
      throw ParseError(line_no_, std::string("expected non-negative integer ") + what + ", got '" +
                                     std::string(word) + "'");
    }
    return value;
  }

  void expect_end() {
    skip_space();
    if (!rest_.empty()) throw ParseError(line_no_, "trailing content '" + std::string(rest_) + "'");
  }

 private:
  void skip_space() {
    const auto start = rest_.find_first_not_of(" \t\r");
    rest_.remove_prefix(start == std::string_view::npos ? rest_.size() : start);
  }

  std::string_view rest_;
  std::size_t line_no_;
};

bool blank(std::string_view line) { return line.find_first_not_of(" \t\r") == std::string_view::npos; }

VertexId checked_vertex(std::uint64_t v, std::uint64_t n, std::size_t line_no) {
  if (v >= n) {
    throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n));
  }
  return static_cast<VertexId>(v);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path.string());
  return in;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& msg)
    : GraphError("line " + std::to_string(line) + ": " + msg), line_(line) {}

Graph read_edgelist(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line.front() == '#') continue;
    Tokens tok(line, line_no);
    if (!have_header) {
      n = tok.next_uint("vertex count");
      m = tok.next_uint("edge count");
      tok.expect_end();
      if (n > std::numeric_limits<VertexId>::max()) throw ParseError(line_no, "vertex count too large");
      have_header = true;
      edges.reserve(m);
      continue;
    }
    if (edges.size() == m) throw ParseError(line_no, "more edge lines than the header's " + std::to_string(m));
    const auto u = checked_vertex(tok.next_uint("source"), n, line_no);
    const auto v = checked_vertex(tok.next_uint("target"), n, line_no);
    const auto w = tok.next_uint("weight");
    tok.expect_end();
    edges.push_back({u, v, w});
  }
  if (!have_header) throw ParseError(line_no, "missing 'N M' header");
  if (edges.size() != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " +
                                  std::to_string(edges.size()));
  }
  return build_graph(edges, n, true);
}

void write_edgelist(const Graph& g, std::ostream& out) {
  out << g.n_vertices() << ' ' << g.n_edges() << '\n';
  for (const auto& e : g.edges()) out << e.source << ' ' << e.target << ' ' << e.weight << '\n';
}

Graph load_edgelist(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_edgelist(in);
}

void save_edgelist(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path.string());
  write_edgelist(g, out);
  if (!out) throw GraphError("write failed for " + path.string());
}

Graph read_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    Tokens tok(line, line_no);
    const auto kind = tok.next_word();
    if (kind == "c") continue;
    if (kind == "p") {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      if (tok.next_word() != "sp") throw ParseError(line_no, "expected 'p sp N M'");
      n = tok.next_uint("vertex count");
      m = tok.next_uint("arc count");
      tok.expect_end();
      have_header = true;
      edges.reserve(m);
    } else if (kind == "a") {
      if (!have_header) throw ParseError(line_no, "arc before problem line");
      const auto u = tok.next_uint("source");
      const auto v = tok.next_uint("target");
      if (u == 0 || v == 0) throw ParseError(line_no, "DIMACS ids are 1-based");
      const auto w = tok.next_uint("weight");
      tok.expect_end();
      edges.push_back({checked_vertex(u - 1, n, line_no), checked_vertex(v - 1, n, line_no), w});
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(kind) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing problem line");
  if (edges.size() != m) {
    throw ParseError(line_no, "problem line declares " + std::to_string(m) + " arcs, found " +
                                  std::to_string(edges.size()));
  }
  return build_graph(edges, n, true);
}

Graph load_dimacs(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_dimacs(in);
}

Graph load_graph(const std::filesystem::path& path) {
  return path.extension() == ".gr" ? load_dimacs(path) : load_edgelist(path);
}

void write_distances(std::span<const Dist> dist, std::ostream& out) {
  for (std::size_t v = 0; v < dist.size(); ++v) {
    out << v << ' ';
    if (dist[v] == kInfinity) {
      out << "INF";
    } else {
      out << dist[v];
    }
    out << '\n';
  }
}

}  // namespace spasync
