#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "spasync/graph.hpp"

namespace spasync {

/// Malformed input; what() names the offending line.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& msg);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Edge-list format: header "N M", then M lines "u v w" (0-based ids).
// Lines starting with '#' are comments.
Graph read_edgelist(std::istream& in);
void write_edgelist(const Graph& g, std::ostream& out);
Graph load_edgelist(const std::filesystem::path& path);
void save_edgelist(const Graph& g, const std::filesystem::path& path);

// DIMACS shortest-path format: "p sp N M", "a u v w" with 1-based ids, "c" comments.
Graph read_dimacs(std::istream& in);
Graph load_dimacs(const std::filesystem::path& path);

/// Picks the reader by extension: ".gr" is DIMACS, anything else is an edge list.
Graph load_graph(const std::filesystem::path& path);

/// One "v dist" line per vertex, "INF" for unreachable vertices.
void write_distances(std::span<const Dist> dist, std::ostream& out);

}  // namespace spasync
