#include "triadgraph/graph.hpp"

#include <algorithm>
#include <limits>
#include <new>

#include <fmt/format.h>

#include "triadgraph/errors.hpp"

namespace triadgraph {

GrowthGraph::GrowthGraph(const ModelParams& params) : params_(params) {
  validate(params_);
  degrees_ = {1, 1};
  endpoints_ = {0, 1};
  tri_counts_ = {0, 0};
  sum_sq_degrees_ = 2;
}

GraphView GrowthGraph::view() const noexcept {
  return GraphView{degrees_,   endpoints_,      tri_counts_,
                   num_steps_, triangle_steps_, sum_sq_degrees_};
}

void GrowthGraph::attach_single(Vertex u) {
  const auto fresh = static_cast<Vertex>(degrees_.size());
  sum_sq_degrees_ += 2 * std::uint64_t{degrees_[u]} + 1 + 1;
  ++degrees_[u];
  degrees_.push_back(1);
  tri_counts_.push_back(0);
  endpoints_.push_back(u);
  endpoints_.push_back(fresh);
  ++num_steps_;
}

void GrowthGraph::attach_pair(Vertex u, Vertex w) {
  const auto fresh = static_cast<Vertex>(degrees_.size());
  sum_sq_degrees_ += 2 * std::uint64_t{degrees_[u]} + 1;
  sum_sq_degrees_ += 2 * std::uint64_t{degrees_[w]} + 1;
  sum_sq_degrees_ += 4;
  ++degrees_[u];
  ++degrees_[w];
  ++tri_counts_[u];
  ++tri_counts_[w];
  degrees_.push_back(2);
  tri_counts_.push_back(1);
  endpoints_.push_back(u);
  endpoints_.push_back(fresh);
  endpoints_.push_back(w);
  endpoints_.push_back(fresh);
  ++triangle_steps_;
  ++num_steps_;
}

StepRecord GrowthGraph::step(RandomStream& rng) {
  if (rng.bernoulli(params_.alpha)) {
    const Edge e = edge(sample_uniform_edge(num_edges(), rng));
    attach_pair(e.u, e.w);
    return {StepType::Triangle, e.u, e.w};
  }
  const Vertex u = sample_pa_vertex(degrees_, endpoints_, num_vertices(),
                                    num_edges(), params_.delta, rng);
  attach_single(u);
  return {StepType::PA, u, u};
}

StepRecord GrowthGraph::step_two_stage(RandomStream& rng) {
  if (params_.delta != 0.0) {
    throw StateError("two-stage construction requires delta = 0");
  }
  // A uniform endpoint slot picks u with probability d(u) / 2|E|; given u,
  // the other slot of the same edge is a uniform neighbour of u.
  const std::uint64_t slot = rng.below(endpoints_.size());
  const Vertex u = endpoints_[slot];
  if (rng.bernoulli(params_.alpha)) {
    const Vertex w = endpoints_[slot ^ 1];
    attach_pair(u, w);
    return {StepType::Triangle, u, w};
  }
  attach_single(u);
  return {StepType::PA, u, u};
}

void GrowthGraph::apply(const StepRecord& record) {
  const auto n = num_vertices();
  if (record.first >= n || (record.type == StepType::Triangle && record.second >= n)) {
    throw StateError("step target is not an existing vertex");
  }
  if (record.type == StepType::PA) {
    attach_single(record.first);
    return;
  }
  bool found = false;
  for (std::uint64_t k = 0; k < num_edges() && !found; ++k) {
    const Edge e = edge(k);
    found = (e.u == record.first && e.w == record.second) ||
            (e.u == record.second && e.w == record.first);
  }
  if (!found) throw StateError("triangle step targets are not an existing edge");
  attach_pair(record.first, record.second);
}

void GrowthGraph::reserve(std::uint64_t steps) {
  const std::uint64_t max_vertices = std::numeric_limits<Vertex>::max();
  if (steps > max_vertices - num_vertices()) {
    throw AllocationError(
        fmt::format("{} steps exceed the 32-bit vertex id range", steps));
  }
  // Expected edge count (1 + alpha) per step, with slack for fluctuations.
  const double per_step = 1.0 + params_.alpha;
  const auto edges = static_cast<std::uint64_t>(
      per_step * static_cast<double>(steps) * 1.01 + 64.0);
  try {
    degrees_.reserve(degrees_.size() + steps);
    tri_counts_.reserve(tri_counts_.size() + steps);
    endpoints_.reserve(endpoints_.size() + 2 * std::min(edges, 2 * steps));
  } catch (const std::bad_alloc&) {
    throw AllocationError(fmt::format("cannot allocate storage for {} steps", steps));
  } catch (const std::length_error&) {
    throw AllocationError(fmt::format("cannot allocate storage for {} steps", steps));
  }
}

std::size_t GrowthGraph::memory_bytes() const noexcept {
  return degrees_.capacity() * sizeof(std::uint32_t) +
         tri_counts_.capacity() * sizeof(std::uint32_t) +
         endpoints_.capacity() * sizeof(Vertex);
}

GrowthGraph run(const ModelParams& params, RandomStream& rng,
                std::uint64_t t_final,
                std::span<const std::uint64_t> snapshot_times,
                const Observer& observer, std::vector<StepRecord>* log) {
  if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end())) {
    throw ParameterError("snapshot times must be sorted ascending");
  }
  if (!snapshot_times.empty() && snapshot_times.back() > t_final) {
    throw ParameterError(fmt::format("snapshot time {} exceeds t_final {}",
                                     snapshot_times.back(), t_final));
  }
  GrowthGraph graph(params);
  graph.reserve(t_final);
  if (log != nullptr) {
    try {
      log->reserve(log->size() + t_final);
    } catch (const std::bad_alloc&) {
      throw AllocationError("cannot allocate the step log");
    }
  }

  auto next = snapshot_times.begin();
  auto notify = [&] {
    bool hit = false;
    while (next != snapshot_times.end() && *next == graph.num_steps()) {
      hit = true;
      ++next;
    }
    if (hit && observer) observer(graph);
  };

  notify();
  try {
    for (std::uint64_t t = 0; t < t_final; ++t) {
      const StepRecord record = graph.advance(rng);
      if (log != nullptr) log->push_back(record);
      notify();
    }
  } catch (const std::bad_alloc&) {
    throw AllocationError(
        fmt::format("allocation failed after {} steps", graph.num_steps()));
  }
  return graph;
}

GrowthGraph run(const ModelParams& params, std::uint64_t t_final,
                std::span<const std::uint64_t> snapshot_times,
                const Observer& observer, std::vector<StepRecord>* log) {
  RandomStream rng = derive_stream(params.seed, 0);
  return run(params, rng, t_final, snapshot_times, observer, log);
}

}  // namespace triadgraph
