#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "triadgraph/graph.hpp"
#include "triadgraph/metrics.hpp"
#include "triadgraph/stats.hpp"

namespace triadgraph {

/// Small hand-built graphs (<= 6 vertices) used by the distributional checks:
/// G(0), the path v2-v1-v3, K3, K3 plus a pendant on v1, two triangles
/// sharing the edge v1-v2, and a 6-vertex mix of both step types.
std::vector<GrowthGraph> reference_fixtures(const ModelParams& params);

/// (d(u) + delta) / (2|E| + delta n) for every vertex.
std::vector<double> pa_probabilities(const GraphView& g, double delta);

enum class PaMethod { Dispatch, Mixture, Rejection };

/// Draws `draws` vertices from `fixture` with the given method and tests the
/// counts against pa_probabilities.
ChiSquareResult sampler_exactness_test(const GrowthGraph& fixture, double delta,
                                       std::uint64_t draws, RandomStream& rng,
                                       PaMethod method = PaMethod::Dispatch);

/// Outcome counts of a single step taken `trials` times from `fixture`, keyed
/// by (type, min target, max target).
using StepOutcomeCounts = std::map<std::tuple<int, Vertex, Vertex>, std::uint64_t>;

StepOutcomeCounts single_step_outcomes(const GrowthGraph& fixture, Mode mode,
                                       std::uint64_t trials, RandomStream& rng);

/// Homogeneity test between edge-choice and two-stage single-step outcomes
/// from a delta = 0 fixture.
ChiSquareResult construction_equivalence_test(const GrowthGraph& fixture,
                                              std::uint64_t trials,
                                              std::uint64_t seed);

struct ValidationOptions {
  std::uint64_t t = 200;
  std::uint64_t seeds = 100;
  /// (alpha, delta) pairs; default covers the Sub, Critical and Super regimes
  /// plus the tree case alpha = 0.
  std::vector<std::pair<double, double>> grid = {
      {0.3, 2.0}, {0.5, 0.0}, {0.1, -0.9}, {0.0, 0.5}};
  std::uint64_t draws = 1'000'000;
  std::uint64_t equivalence_trials = 100'000;
  double significance = 1e-3;
  bool distributional = true;
  /// Test-only hook applied to every fast-path snapshot before comparison.
  std::function<void(SnapshotStats&)> tamper;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const noexcept;
};

/// Grows `seeds` graphs per grid point (both modes where delta = 0) and checks,
/// at every step up to `t`, that the fast snapshot equals the brute-force
/// oracle, that T_t equals the triangle-step count and the brute-force count,
/// the degree/edge bookkeeping identities, and simplicity. When
/// `distributional`, also runs the sampler chi-square suite and the
/// construction-equivalence suite. Throws SizeGuardError when t + 2 exceeds
/// the oracle size guard.
ValidationReport validate_oracles(const ValidationOptions& options);

}  // namespace triadgraph
