#pragma once

#include <cstdint>
#include <span>

#include "triadgraph/errors.hpp"
#include "triadgraph/random.hpp"

namespace triadgraph {

using Vertex = std::uint32_t;

/// Vertex drawn with probability (d(u) + delta) / (2|E| + delta * n).
///
/// `endpoints` lists both ends of every edge, so a uniform entry is a vertex
/// drawn proportionally to degree. delta >= 0 uses the mixture method,
/// -1 < delta < 0 the rejection method. Every vertex must have degree >= 1.
Vertex sample_pa_vertex(std::span<const std::uint32_t> degrees,
                        std::span<const Vertex> endpoints,
                        std::uint64_t num_vertices, std::uint64_t num_edges,
                        double delta, RandomStream& rng);

/// Mixture method, delta >= 0: with probability 2|E| / (2|E| + delta n) a
/// uniform endpoint, otherwise a uniform vertex.
inline Vertex sample_pa_vertex_mixture(std::span<const Vertex> endpoints,
                                       std::uint64_t num_vertices,
                                       std::uint64_t num_edges, double delta,
                                       RandomStream& rng) {
  const double stubs = 2.0 * static_cast<double>(num_edges);
  const double total = stubs + delta * static_cast<double>(num_vertices);
  if (delta == 0.0 || rng.uniform01() * total < stubs) {
    return endpoints[rng.below(2 * num_edges)];
  }
  return static_cast<Vertex>(rng.below(num_vertices));
}

struct RejectionDraw {
  Vertex vertex;
  std::uint64_t trials;
};

/// Rejection method, any delta > -1: propose a uniform endpoint u and accept
/// with probability (d(u) + delta) / (d(u) * max(1, 1 + delta)). For
/// delta < 0 this is (d(u) + delta) / d(u) and the expected number of trials
/// is 2|E| / (2|E| + delta n).
inline RejectionDraw sample_pa_vertex_rejection(
    std::span<const std::uint32_t> degrees, std::span<const Vertex> endpoints,
    std::uint64_t num_edges, double delta, RandomStream& rng) {
  const double envelope = delta > 0.0 ? 1.0 + delta : 1.0;
  const std::uint64_t stubs = 2 * num_edges;
  for (std::uint64_t trials = 1;; ++trials) {
    const Vertex u = endpoints[rng.below(stubs)];
    const double d = degrees[u];
    if (rng.uniform01() * d * envelope < d + delta) return {u, trials};
  }
}

inline Vertex sample_pa_vertex(std::span<const std::uint32_t> degrees,
                               std::span<const Vertex> endpoints,
                               std::uint64_t num_vertices,
                               std::uint64_t num_edges, double delta,
                               RandomStream& rng) {
  if (delta >= 0.0) {
    return sample_pa_vertex_mixture(endpoints, num_vertices, num_edges, delta,
                                    rng);
  }
  return sample_pa_vertex_rejection(degrees, endpoints, num_edges, delta, rng)
      .vertex;
}

/// Uniform edge index in [0, num_edges). Throws StateError when empty.
inline std::uint64_t sample_uniform_edge(std::uint64_t num_edges,
                                         RandomStream& rng) {
  if (num_edges == 0) throw StateError("cannot draw an edge from an empty edge set");
  return rng.below(num_edges);
}

}  // namespace triadgraph
