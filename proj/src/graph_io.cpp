#include "triadgraph/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "triadgraph/errors.hpp"
#include "triadgraph/metrics.hpp"

namespace triadgraph {

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

void write_graph(std::ostream& out, const GrowthGraph& graph) {
  const ModelParams& p = graph.params();
  out << fmt::format("# alpha={} delta={} mode={} seed={} steps={}\n",
                     format_double(p.alpha), format_double(p.delta),
                     to_string(p.mode), p.seed, graph.num_steps());

  constexpr std::size_t kChunk = 1 << 16;
  std::string buffer;
  buffer.reserve(kChunk + 32);
  char digits[16];
  auto put = [&](std::uint64_t v) {
    const auto [end, ec] = std::to_chars(digits, digits + sizeof digits, v);
    buffer.append(digits, end);
  };
  const auto endpoints = graph.endpoints();
  for (std::size_t k = 0; k < endpoints.size(); k += 2) {
    put(std::uint64_t{endpoints[k]} + 1);
    buffer.push_back(' ');
    put(std::uint64_t{endpoints[k + 1]} + 1);
    buffer.push_back('\n');
    if (buffer.size() >= kChunk) {
      out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
      buffer.clear();
    }
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
}

std::string export_graph(const GrowthGraph& graph) {
  std::ostringstream out;
  write_graph(out, graph);
  return out.str();
}

void write_graph_file(const std::filesystem::path& path, const GrowthGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  write_graph(out, graph);
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && end == s.data() + s.size();
}

void parse_header(std::string_view body, std::size_t line, GraphHeader& header) {
  std::size_t pos = 0;
  while (pos < body.size()) {
    const auto start = body.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto stop = body.find_first_of(" \t", start);
    if (stop == std::string_view::npos) stop = body.size();
    const std::string_view token = body.substr(start, stop - start);
    pos = stop;

    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError(line, fmt::format("header token '{}' is not key=value", token));
    }
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    auto bad_value = [&] {
      return FormatError(line, fmt::format("invalid value '{}' for header key '{}'", value, key));
    };
    if (key == "alpha" || key == "delta") {
      double v = 0.0;
      if (!parse_number(value, v)) throw bad_value();
      (key == "alpha" ? header.alpha : header.delta) = v;
    } else if (key == "mode") {
      header.mode = parse_mode(value);
      if (!header.mode) throw bad_value();
    } else if (key == "seed" || key == "steps") {
      std::uint64_t v = 0;
      if (!parse_number(value, v)) throw bad_value();
      (key == "seed" ? header.seed : header.steps) = v;
    } else {
      throw FormatError(line, fmt::format("unknown header key '{}'", key));
    }
  }
}

}  // namespace

StaticGraph import_graph(std::istream& in) {
  StaticGraph g;
  std::set<std::pair<Vertex, Vertex>> seen;
  std::uint64_t max_id = 0;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '#') {
      parse_header(text.substr(1), line, g.header);
      continue;
    }
    const auto space = text.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw FormatError(line, "expected two vertex ids");
    }
    std::uint64_t u = 0;
    std::uint64_t w = 0;
    if (!parse_number(text.substr(0, space), u) ||
        !parse_number(trim(text.substr(space)), w)) {
      throw FormatError(line, "expected two vertex ids");
    }
    if (u == 0 || w == 0 || u > 0xFFFFFFFFULL || w > 0xFFFFFFFFULL) {
      throw FormatError(line, "vertex ids must be in 1..2^32-1");
    }
    if (u == w) throw FormatError(line, "self-loop");
    const auto a = static_cast<Vertex>(u - 1);
    const auto b = static_cast<Vertex>(w - 1);
    if (!seen.insert(std::minmax(a, b)).second) {
      throw FormatError(line, fmt::format("duplicate edge {} {}", u, w));
    }
    g.endpoints.push_back(a);
    g.endpoints.push_back(b);
    max_id = std::max({max_id, u, w});
  }
  if (g.endpoints.empty()) throw FormatError(0, "graph has no edges");

  g.degrees.assign(max_id, 0);
  for (Vertex v : g.endpoints) ++g.degrees[v];
  for (std::uint64_t v = 0; v < max_id; ++v) {
    if (g.degrees[v] == 0) {
      throw FormatError(0, fmt::format("vertex ids are not contiguous: {} is missing", v + 1));
    }
    g.sum_sq_degrees += std::uint64_t{g.degrees[v]} * g.degrees[v];
  }
  g.steps = max_id >= 2 ? max_id - 2 : 0;
  if (g.header.steps && *g.header.steps != g.steps) {
    throw FormatError(0, fmt::format("header steps={} but the graph has {} vertices",
                                     *g.header.steps, max_id));
  }

  // Unguarded neighbour-pair scan; the guarded oracle is for tests only.
  std::vector<std::vector<Vertex>> adj(max_id);
  for (std::size_t k = 0; k < g.endpoints.size(); k += 2) {
    adj[g.endpoints[k]].push_back(g.endpoints[k + 1]);
    adj[g.endpoints[k + 1]].push_back(g.endpoints[k]);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  g.tri_counts.assign(max_id, 0);
  std::uint64_t total = 0;
  for (std::uint64_t v = 0; v < max_id; ++v) {
    const auto& nbrs = adj[v];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const auto& other = adj[nbrs[i]];
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (std::binary_search(other.begin(), other.end(), nbrs[j])) ++g.tri_counts[v];
      }
    }
    total += g.tri_counts[v];
  }
  g.triangles = total / 3;
  return g;
}

StaticGraph import_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return import_graph(in);
}

StaticGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  return import_graph(in);
}

}  // namespace triadgraph
