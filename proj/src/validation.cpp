#include "triadgraph/validation.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "triadgraph/errors.hpp"

namespace triadgraph {

namespace {

StepRecord pa(Vertex u) { return {StepType::PA, u, u}; }
StepRecord tri(Vertex u, Vertex w) { return {StepType::Triangle, u, w}; }

GrowthGraph build(const ModelParams& params, std::initializer_list<StepRecord> steps) {
  GrowthGraph g(params);
  for (const auto& s : steps) g.apply(s);
  return g;
}

}  // namespace

std::vector<GrowthGraph> reference_fixtures(const ModelParams& params) {
  return {
      build(params, {}),
      build(params, {pa(0)}),
      build(params, {tri(0, 1)}),
      build(params, {tri(0, 1), pa(0)}),
      build(params, {tri(0, 1), tri(0, 1)}),
      build(params, {pa(0), tri(0, 2), pa(3), tri(1, 0)}),
  };
}

std::vector<double> pa_probabilities(const GraphView& g, double delta) {
  const double total = 2.0 * static_cast<double>(g.num_edges()) +
                       delta * static_cast<double>(g.num_vertices());
  std::vector<double> p;
  p.reserve(g.num_vertices());
  for (auto d : g.degrees) p.push_back((d + delta) / total);
  return p;
}

ChiSquareResult sampler_exactness_test(const GrowthGraph& fixture, double delta,
                                       std::uint64_t draws, RandomStream& rng,
                                       PaMethod method) {
  const auto degrees = fixture.degrees();
  const auto endpoints = fixture.endpoints();
  const auto n = fixture.num_vertices();
  const auto m = fixture.num_edges();
  if (method == PaMethod::Mixture && delta < 0.0) {
    throw ParameterError("mixture sampler requires delta >= 0");
  }
  std::vector<std::uint64_t> counts(n, 0);
  for (std::uint64_t i = 0; i < draws; ++i) {
    Vertex v = 0;
    switch (method) {
      case PaMethod::Dispatch:
        v = sample_pa_vertex(degrees, endpoints, n, m, delta, rng);
        break;
      case PaMethod::Mixture:
        v = sample_pa_vertex_mixture(endpoints, n, m, delta, rng);
        break;
      case PaMethod::Rejection:
        v = sample_pa_vertex_rejection(degrees, endpoints, m, delta, rng).vertex;
        break;
    }
    ++counts[v];
  }
  return chi_square_gof(counts, pa_probabilities(fixture.view(), delta));
}

StepOutcomeCounts single_step_outcomes(const GrowthGraph& fixture, Mode mode,
                                       std::uint64_t trials, RandomStream& rng) {
  StepOutcomeCounts counts;
  for (std::uint64_t i = 0; i < trials; ++i) {
    GrowthGraph g = fixture;
    const StepRecord r = mode == Mode::TwoStage ? g.step_two_stage(rng) : g.step(rng);
    const auto [lo, hi] = std::minmax(r.first, r.second);
    ++counts[{static_cast<int>(r.type), lo, hi}];
  }
  return counts;
}

ChiSquareResult construction_equivalence_test(const GrowthGraph& fixture,
                                              std::uint64_t trials, std::uint64_t seed) {
  RandomStream edge_rng = derive_stream(seed, 0);
  RandomStream two_stage_rng = derive_stream(seed, 1);
  const auto a = single_step_outcomes(fixture, Mode::EdgeChoice, trials, edge_rng);
  const auto b = single_step_outcomes(fixture, Mode::TwoStage, trials, two_stage_rng);
  std::map<std::tuple<int, Vertex, Vertex>, std::pair<std::uint64_t, std::uint64_t>> joined;
  for (const auto& [key, c] : a) joined[key].first = c;
  for (const auto& [key, c] : b) joined[key].second = c;
  std::vector<std::uint64_t> first;
  std::vector<std::uint64_t> second;
  for (const auto& [key, pair] : joined) {
    first.push_back(pair.first);
    second.push_back(pair.second);
  }
  return chi_square_homogeneity(first, second);
}

bool ValidationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

namespace {

/// Bookkeeping identities of a grown graph; returns the first violation.
std::string bookkeeping_violation(const GrowthGraph& g, std::uint64_t pa_steps) {
  const auto degrees = g.degrees();
  const std::uint64_t degree_sum = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
  const auto tri = g.tri_counts();
  const std::uint64_t tri_sum = std::accumulate(tri.begin(), tri.end(), std::uint64_t{0});
  if (g.num_vertices() != g.num_steps() + 2) return "|V| != t + 2";
  if (degree_sum != 2 * g.num_edges()) return "sum of degrees != 2|E|";
  if (g.num_edges() != 1 + pa_steps + 2 * g.triangle_steps()) return "|E| != 1 + #PA + 2 #triangle";
  if (pa_steps + g.triangle_steps() != g.num_steps()) return "#PA + #triangle != t";
  if (tri_sum != 3 * g.triangle_steps()) return "sum of triangle counts != 3 T";
  return {};
}

}  // namespace

ValidationReport validate_oracles(const ValidationOptions& options) {
  if (options.t + 2 > kBruteForceMaxVertices) {
    throw SizeGuardError(fmt::format("t = {} exceeds the oracle size guard of {} vertices",
                                     options.t, kBruteForceMaxVertices));
  }
  ValidationReport report;

  for (const auto& [alpha, delta] : options.grid) {
    std::vector<Mode> modes = {Mode::EdgeChoice};
    if (delta == 0.0) modes.push_back(Mode::TwoStage);
    for (const Mode mode : modes) {
      ValidationCheck check;
      check.name = fmt::format("oracle alpha={} delta={} mode={}", alpha, delta, to_string(mode));
      std::string failure;
      for (std::uint64_t seed = 0; seed < options.seeds && failure.empty(); ++seed) {
        const ModelParams params{alpha, delta, mode, seed};
        GrowthGraph g(params);
        RandomStream rng = derive_stream(seed, 0);
        std::uint64_t pa_steps = 0;
        for (std::uint64_t t = 0; failure.empty(); ++t) {
          SnapshotStats fast = snapshot(g.view(), true);
          if (options.tamper) options.tamper(fast);
          const SnapshotStats oracle = brute_force_stats(g.view(), true);
          const auto diffs = compare_stats(fast, oracle);
          if (!diffs.empty()) {
            failure = fmt::format("seed {} t {}: {}", seed, t, diffs.front());
          } else if (fast.triangles != g.triangle_steps()) {
            failure = fmt::format("seed {} t {}: T_t != triangle steps", seed, t);
          } else if (auto v = bookkeeping_violation(g, pa_steps); !v.empty()) {
            failure = fmt::format("seed {} t {}: {}", seed, t, v);
          } else if (!is_simple(g.num_vertices(), g.endpoints())) {
            failure = fmt::format("seed {} t {}: graph is not simple", seed, t);
          } else if (alpha == 0.0 && oracle.triangles != 0) {
            failure = fmt::format("seed {} t {}: tree has a triangle", seed, t);
          }
          if (t == options.t) break;
          if (g.advance(rng).type == StepType::PA) ++pa_steps;
        }
      }
      check.passed = failure.empty();
      check.detail = failure.empty()
                         ? fmt::format("{} seeds x {} steps agree", options.seeds, options.t)
                         : failure;
      report.checks.push_back(std::move(check));
    }
  }

  if (!options.distributional) return report;

  std::uint64_t stream = 0;
  for (const double delta : {-0.9, -0.5, 0.0, 1.0, 5.0}) {
    const auto fixtures = reference_fixtures(ModelParams{0.0, delta, Mode::EdgeChoice, 0});
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
      RandomStream rng = derive_stream(0x5A3D1E, stream++);
      const ChiSquareResult r = sampler_exactness_test(fixtures[f], delta, options.draws, rng);
      report.checks.push_back(
          {fmt::format("sampler delta={} fixture={}", delta, f), r.accepts(options.significance),
           fmt::format("chi2={:.4g} dof={} p={:.4g}", r.statistic, r.dof, r.p_value)});
    }
  }
  for (const double alpha : {0.25, 0.5, 0.75}) {
    const auto fixtures = reference_fixtures(ModelParams{alpha, 0.0, Mode::EdgeChoice, 0});
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
      const ChiSquareResult r =
          construction_equivalence_test(fixtures[f], options.equivalence_trials, 0xE0 + stream++);
      report.checks.push_back({fmt::format("equivalence alpha={} fixture={}", alpha, f),
                               r.accepts(options.significance),
                               fmt::format("chi2={:.4g} dof={} p={:.4g}", r.statistic, r.dof,
                                           r.p_value)});
    }
  }
  return report;
}

}  // namespace triadgraph
