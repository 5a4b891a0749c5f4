#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "triadgraph/graph.hpp"

namespace triadgraph {

/// degree -> number of vertices with that degree
using DegreeHistogram = std::map<std::uint32_t, std::uint64_t>;

/// (d(u), d(w)) -> count. Ordered-pair convention: each edge {u, w} adds one
/// to (d(u), d(w)) and one to (d(w), d(u)), so sum_m N(l, m) = l N(l).
using JointHistogram = std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t>;

/// Observables of one graph at one time.
struct SnapshotStats {
  std::uint64_t t = 0;
  std::uint64_t num_edges = 0;
  DegreeHistogram degree_hist;
  std::optional<JointHistogram> joint_hist;
  std::uint64_t triangles = 0;
  std::uint64_t triples = 0;
  double c1 = 0.0;
  std::optional<double> c2;  // undefined while there are no connected triples

  friend bool operator==(const SnapshotStats&, const SnapshotStats&) = default;
};

DegreeHistogram degree_histogram(const GraphView& g);
JointHistogram joint_degree_histogram(const GraphView& g);

/// tri_counts[v] / C(d(v), 2) when d(v) >= 2, else 0.
double local_clustering(const GraphView& g, Vertex v);

/// Mean of local_clustering over all vertices.
double c1_average_local(const GraphView& g);

/// C_t = sum_v C(d(v), 2), from the maintained sum of squared degrees.
std::uint64_t connected_triples(const GraphView& g) noexcept;

/// 3 T_t / C_t. Throws UndefinedMetricError when C_t = 0.
double c2_global(const GraphView& g);

/// Fast path: uses only the incrementally maintained counters and the degree
/// and triangle arrays. O(|V|), plus O(|E|) when `with_joint`.
SnapshotStats snapshot(const GraphView& g, bool with_joint = false);

inline constexpr std::uint64_t kBruteForceMaxVertices = 10'000;

/// Per-vertex triangle counts recomputed from the edge list alone by scanning
/// every pair of neighbours of every vertex. Throws SizeGuardError above
/// kBruteForceMaxVertices.
std::vector<std::uint32_t> brute_force_triangle_counts(std::uint64_t num_vertices,
                                                       std::span<const Vertex> endpoints);

/// Oracle path: rebuilds adjacency from `g.endpoints` and recomputes every
/// field from scratch (triangles by edge-neighbourhood intersection, |E(v)|
/// by neighbour-pair scanning, C_t by summing C(d, 2)). Ignores the counters
/// stored in `g`. Throws SizeGuardError above kBruteForceMaxVertices.
SnapshotStats brute_force_stats(const GraphView& g, bool with_joint = false);

/// Field-by-field differences between two snapshots: integers must match
/// exactly, reals within `tolerance`. Empty when they agree.
std::vector<std::string> compare_stats(const SnapshotStats& fast,
                                       const SnapshotStats& oracle,
                                       double tolerance = 1e-12);

/// True when the edge list has no self-loop and no repeated edge.
bool is_simple(std::uint64_t num_vertices, std::span<const Vertex> endpoints);

}  // namespace triadgraph
