#include "triadgraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "triadgraph/errors.hpp"

namespace triadgraph {

namespace {

double pair_count(std::uint64_t d) noexcept {
  return static_cast<double>(d * (d - 1) / 2);
}

void guard_size(std::uint64_t num_vertices) {
  if (num_vertices > kBruteForceMaxVertices) {
    throw SizeGuardError(fmt::format(
        "brute-force oracle limited to {} vertices, graph has {}",
        kBruteForceMaxVertices, num_vertices));
  }
}

std::vector<std::vector<Vertex>> adjacency(std::uint64_t num_vertices,
                                           std::span<const Vertex> endpoints) {
  std::vector<std::vector<Vertex>> adj(num_vertices);
  for (std::size_t k = 0; k + 1 < endpoints.size(); k += 2) {
    adj[endpoints[k]].push_back(endpoints[k + 1]);
    adj[endpoints[k + 1]].push_back(endpoints[k]);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

bool adjacent(const std::vector<std::vector<Vertex>>& adj, Vertex a, Vertex b) {
  return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

}  // namespace

DegreeHistogram degree_histogram(const GraphView& g) {
  DegreeHistogram hist;
  for (auto d : g.degrees) ++hist[d];
  return hist;
}

JointHistogram joint_degree_histogram(const GraphView& g) {
  JointHistogram hist;
  for (std::uint64_t k = 0; k < g.num_edges(); ++k) {
    const Edge e = g.edge(k);
    const auto du = g.degrees[e.u];
    const auto dw = g.degrees[e.w];
    ++hist[{du, dw}];
    ++hist[{dw, du}];
  }
  return hist;
}

double local_clustering(const GraphView& g, Vertex v) {
  const std::uint64_t d = g.degrees[v];
  if (d < 2) return 0.0;
  return static_cast<double>(g.tri_counts[v]) / pair_count(d);
}

double c1_average_local(const GraphView& g) {
  double sum = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) sum += local_clustering(g, v);
  return sum / static_cast<double>(g.num_vertices());
}

std::uint64_t connected_triples(const GraphView& g) noexcept {
  // sum C(d,2) = (sum d^2 - sum d) / 2 = sum d^2 / 2 - |E|
  return g.sum_sq_degrees / 2 - g.num_edges();
}

double c2_global(const GraphView& g) {
  const std::uint64_t triples = connected_triples(g);
  if (triples == 0) {
    throw UndefinedMetricError("global clustering undefined: no connected triples");
  }
  return 3.0 * static_cast<double>(g.triangles) / static_cast<double>(triples);
}

SnapshotStats snapshot(const GraphView& g, bool with_joint) {
  SnapshotStats s;
  s.t = g.steps;
  s.num_edges = g.num_edges();
  s.degree_hist = degree_histogram(g);
  if (with_joint) s.joint_hist = joint_degree_histogram(g);
  s.triangles = g.triangles;
  s.triples = connected_triples(g);
  s.c1 = c1_average_local(g);
  if (s.triples > 0) s.c2 = c2_global(g);
  return s;
}

std::vector<std::uint32_t> brute_force_triangle_counts(
    std::uint64_t num_vertices, std::span<const Vertex> endpoints) {
  guard_size(num_vertices);
  const auto adj = adjacency(num_vertices, endpoints);
  std::vector<std::uint32_t> counts(num_vertices, 0);
  for (Vertex v = 0; v < num_vertices; ++v) {
    const auto& nbrs = adj[v];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (adjacent(adj, nbrs[i], nbrs[j])) ++counts[v];
      }
    }
  }
  return counts;
}

SnapshotStats brute_force_stats(const GraphView& g, bool with_joint) {
  const std::uint64_t n = g.num_vertices();
  guard_size(n);
  const auto adj = adjacency(n, g.endpoints);

  SnapshotStats s;
  s.t = g.steps;
  s.num_edges = g.endpoints.size() / 2;

  // Triangles: each is seen once from each of its three edges.
  std::uint64_t edge_triangle_hits = 0;
  for (std::size_t k = 0; k + 1 < g.endpoints.size(); k += 2) {
    const auto& a = adj[g.endpoints[k]];
    const auto& b = adj[g.endpoints[k + 1]];
    std::vector<Vertex> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(common));
    edge_triangle_hits += common.size();
  }
  s.triangles = edge_triangle_hits / 3;

  const auto neighbour_edges = brute_force_triangle_counts(n, g.endpoints);
  double clustering_sum = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    const std::uint64_t d = adj[v].size();
    ++s.degree_hist[static_cast<std::uint32_t>(d)];
    s.triples += d * (d - (d > 0 ? 1 : 0)) / 2;
    if (d >= 2) clustering_sum += static_cast<double>(neighbour_edges[v]) / pair_count(d);
  }
  s.c1 = clustering_sum / static_cast<double>(n);
  if (s.triples > 0) {
    s.c2 = 3.0 * static_cast<double>(s.triangles) / static_cast<double>(s.triples);
  }

  if (with_joint) {
    JointHistogram joint;
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex w : adj[v]) {
        ++joint[{static_cast<std::uint32_t>(adj[v].size()),
                 static_cast<std::uint32_t>(adj[w].size())}];
      }
    }
    s.joint_hist = std::move(joint);
  }
  return s;
}

std::vector<std::string> compare_stats(const SnapshotStats& fast,
                                       const SnapshotStats& oracle,
                                       double tolerance) {
  std::vector<std::string> diffs;
  auto check_int = [&](const char* name, std::uint64_t a, std::uint64_t b) {
    if (a != b) diffs.push_back(fmt::format("{}: {} != {}", name, a, b));
  };
  check_int("t", fast.t, oracle.t);
  check_int("num_edges", fast.num_edges, oracle.num_edges);
  check_int("triangles", fast.triangles, oracle.triangles);
  check_int("triples", fast.triples, oracle.triples);
  if (fast.degree_hist != oracle.degree_hist) diffs.emplace_back("degree_hist differs");
  if (fast.joint_hist.has_value() && oracle.joint_hist.has_value() &&
      *fast.joint_hist != *oracle.joint_hist) {
    diffs.emplace_back("joint_hist differs");
  }
  if (!(std::abs(fast.c1 - oracle.c1) <= tolerance)) {
    diffs.push_back(fmt::format("c1: {} vs {}", fast.c1, oracle.c1));
  }
  if (fast.c2.has_value() != oracle.c2.has_value()) {
    diffs.emplace_back("c2 defined in only one snapshot");
  } else if (fast.c2 && !(std::abs(*fast.c2 - *oracle.c2) <= tolerance)) {
    diffs.push_back(fmt::format("c2: {} vs {}", *fast.c2, *oracle.c2));
  }
  return diffs;
}

bool is_simple(std::uint64_t num_vertices, std::span<const Vertex> endpoints) {
  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::size_t k = 0; k + 1 < endpoints.size(); k += 2) {
    const Vertex a = endpoints[k];
    const Vertex b = endpoints[k + 1];
    if (a == b || a >= num_vertices || b >= num_vertices) return false;
    if (!seen.insert(std::minmax(a, b)).second) return false;
  }
  return true;
}

}  // namespace triadgraph
