#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triadgraph/graph.hpp"

namespace triadgraph {

// Text format, one record per line:
//   # alpha=<v> delta=<v> mode=<EdgeChoice|TwoStage> seed=<v> steps=<v>
//   <u> <w>            one line per edge, 1-based ids, insertion order
// Header lines are optional on import; any key other than the five above is
// rejected.

struct GraphHeader {
  std::optional<double> alpha;
  std::optional<double> delta;
  std::optional<Mode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> steps;

  friend bool operator==(const GraphHeader&, const GraphHeader&) = default;
};

/// Owning graph read from a file, with triangle counts recomputed from the
/// edge list.
struct StaticGraph {
  GraphHeader header;
  std::uint64_t steps = 0;
  std::vector<std::uint32_t> degrees;
  std::vector<Vertex> endpoints;
  std::vector<std::uint32_t> tri_counts;
  std::uint64_t triangles = 0;
  std::uint64_t sum_sq_degrees = 0;

  GraphView view() const noexcept {
    return GraphView{degrees, endpoints, tri_counts, steps, triangles, sum_sq_degrees};
  }
};

void write_graph(std::ostream& out, const GrowthGraph& graph);
std::string export_graph(const GrowthGraph& graph);
/// Throws IoError naming the path.
void write_graph_file(const std::filesystem::path& path, const GrowthGraph& graph);

/// Throws FormatError (with line number where applicable) on a malformed
/// line, unknown header key, self-loop, duplicate edge, non-contiguous vertex
/// ids, or an empty edge body.
StaticGraph import_graph(std::istream& in);
StaticGraph import_graph(std::string_view text);
/// Throws IoError when the file cannot be opened.
StaticGraph read_graph_file(const std::filesystem::path& path);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

}  // namespace triadgraph
