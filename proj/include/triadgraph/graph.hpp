#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "triadgraph/params.hpp"
#include "triadgraph/random.hpp"
#include "triadgraph/sampler.hpp"

namespace triadgraph {

/// Vertices are 0-based creation indices internally (vertex i is v_{i+1});
/// files and user-facing output are 1-based.

struct Edge {
  Vertex u;
  Vertex w;
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class StepType : std::uint8_t { PA, Triangle };

/// Outcome of one growth step. `second` is meaningful only for Triangle.
struct StepRecord {
  StepType type;
  Vertex first;
  Vertex second;
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// Read-only view of a simple graph plus its incrementally maintained
/// counters. This is what `metrics` consumes; both GrowthGraph and imported
/// graphs produce one.
struct GraphView {
  std::span<const std::uint32_t> degrees;
  std::span<const Vertex> endpoints;  // 2 entries per edge, insertion order
  std::span<const std::uint32_t> tri_counts;
  std::uint64_t steps = 0;
  std::uint64_t triangles = 0;
  std::uint64_t sum_sq_degrees = 0;

  std::uint64_t num_vertices() const noexcept { return degrees.size(); }
  std::uint64_t num_edges() const noexcept { return endpoints.size() / 2; }
  Edge edge(std::uint64_t k) const noexcept {
    return {endpoints[2 * k], endpoints[2 * k + 1]};
  }
};

/// Append-only state of the growth process.
///
/// Invariants kept after every step:
///   num_vertices() == num_steps() + 2
///   sum(degrees) == endpoints().size() == 2 * num_edges()
///   sum(tri_counts) == 3 * triangle_steps()
///   sum_sq_degrees() == sum(d^2)
class GrowthGraph {
 public:
  /// G(0): v1 -- v2. Throws ParameterError for invalid params.
  explicit GrowthGraph(const ModelParams& params);

  const ModelParams& params() const noexcept { return params_; }
  std::uint64_t num_steps() const noexcept { return num_steps_; }
  std::uint64_t num_vertices() const noexcept { return degrees_.size(); }
  std::uint64_t num_edges() const noexcept { return endpoints_.size() / 2; }
  std::uint64_t triangle_steps() const noexcept { return triangle_steps_; }
  std::uint64_t sum_sq_degrees() const noexcept { return sum_sq_degrees_; }

  std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }
  std::span<const Vertex> endpoints() const noexcept { return endpoints_; }
  std::span<const std::uint32_t> tri_counts() const noexcept { return tri_counts_; }
  Edge edge(std::uint64_t k) const noexcept {
    return {endpoints_[2 * k], endpoints_[2 * k + 1]};
  }

  GraphView view() const noexcept;

  /// One step of the edge-choice construction.
  StepRecord step(RandomStream& rng);

  /// One step of the two-stage construction. Throws StateError unless
  /// delta == 0.
  StepRecord step_two_stage(RandomStream& rng);

  /// Dispatches on params().mode.
  StepRecord advance(RandomStream& rng) {
    return params_.mode == Mode::TwoStage ? step_two_stage(rng) : step(rng);
  }

  /// Replays a recorded step. Targets must be existing vertices and, for a
  /// triangle step, an existing edge (checked by a linear scan, so intended
  /// for building small fixtures). Throws StateError otherwise.
  void apply(const StepRecord& record);

  /// Pre-sizes storage for `steps` further steps. Throws AllocationError.
  void reserve(std::uint64_t steps);

  /// Bytes held by the growth arrays (capacity, not size).
  std::size_t memory_bytes() const noexcept;

  friend bool operator==(const GrowthGraph&, const GrowthGraph&) = default;

 private:
  void attach_single(Vertex u);
  void attach_pair(Vertex u, Vertex w);

  ModelParams params_;
  std::uint64_t num_steps_ = 0;
  std::uint64_t triangle_steps_ = 0;
  std::uint64_t sum_sq_degrees_ = 0;
  std::vector<std::uint32_t> degrees_;
  std::vector<Vertex> endpoints_;
  std::vector<std::uint32_t> tri_counts_;
};

using Observer = std::function<void(const GrowthGraph&)>;

/// Grows G(t_final) from G(0), calling `observer` after exactly t steps for
/// every t in `snapshot_times` (sorted, each <= t_final; duplicates are
/// reported once). When `log` is non-null every StepRecord is appended.
///
/// The stream-less overload uses derive_stream(params.seed, 0), so the result
/// depends only on (params, t_final).
GrowthGraph run(const ModelParams& params, RandomStream& rng,
                std::uint64_t t_final,
                std::span<const std::uint64_t> snapshot_times = {},
                const Observer& observer = {},
                std::vector<StepRecord>* log = nullptr);

GrowthGraph run(const ModelParams& params, std::uint64_t t_final,
                std::span<const std::uint64_t> snapshot_times = {},
                const Observer& observer = {},
                std::vector<StepRecord>* log = nullptr);

}  // namespace triadgraph
