#include <doctest.h>

#include <vector>

#include "triadgraph/graph.hpp"
#include "triadgraph/sampler.hpp"
#include "triadgraph/stats.hpp"
#include "triadgraph/validation.hpp"

using namespace triadgraph;

namespace {

constexpr double kSignificance = 1e-3;
constexpr std::uint64_t kDraws = 1'000'000;

std::vector<std::uint64_t> draw_counts(const GrowthGraph& g, double delta, std::uint64_t draws,
                                       RandomStream& rng) {
  std::vector<std::uint64_t> counts(g.num_vertices(), 0);
  for (std::uint64_t i = 0; i < draws; ++i) {
    ++counts[sample_pa_vertex(g.degrees(), g.endpoints(), g.num_vertices(), g.num_edges(),
                              delta, rng)];
  }
  return counts;
}

GrowthGraph path_of_three(double delta) {
  GrowthGraph g(ModelParams{0.0, delta, Mode::EdgeChoice, 0});
  g.apply({StepType::PA, 0, 0});  // degrees [2, 1, 1]
  return g;
}

}  // namespace

TEST_CASE("initial graph: both vertices equally likely for any delta") {
  for (double delta : {-0.9, -0.5, 0.0, 1.0, 5.0}) {
    GrowthGraph g(ModelParams{0.0, delta, Mode::EdgeChoice, 0});
    RandomStream rng(11);
    const auto counts = draw_counts(g, delta, 200'000, rng);
    CHECK(chi_square_gof(counts, std::vector<double>{0.5, 0.5}).accepts(kSignificance));
  }
}

TEST_CASE("path of three, delta = 1: centre 3/7, leaves 2/7") {
  const GrowthGraph g = path_of_three(1.0);
  REQUIRE(std::vector<std::uint32_t>(g.degrees().begin(), g.degrees().end()) ==
          std::vector<std::uint32_t>{2, 1, 1});
  RandomStream rng(12);
  const auto counts = draw_counts(g, 1.0, kDraws, rng);
  CHECK(chi_square_gof(counts, std::vector<double>{3.0 / 7, 2.0 / 7, 2.0 / 7})
            .accepts(kSignificance));
}

TEST_CASE("path of three, delta = -0.5: centre 0.6, leaves 0.2 (rejection path)") {
  const GrowthGraph g = path_of_three(-0.5);
  RandomStream rng(13);
  const auto counts = draw_counts(g, -0.5, kDraws, rng);
  CHECK(chi_square_gof(counts, std::vector<double>{0.6, 0.2, 0.2}).accepts(kSignificance));
}

TEST_CASE("exact law on every fixture and delta") {
  std::uint64_t stream = 0;
  for (double delta : {-0.9, -0.5, 0.0, 1.0, 5.0}) {
    const auto fixtures = reference_fixtures(ModelParams{0.0, delta, Mode::EdgeChoice, 0});
    for (const auto& fixture : fixtures) {
      CAPTURE(delta);
      CAPTURE(fixture.num_vertices());
      RandomStream rng = derive_stream(404, stream++);
      CHECK(sampler_exactness_test(fixture, delta, kDraws, rng).accepts(kSignificance));
    }
  }
}

TEST_CASE("mixture and rejection agree for delta in [0, 5]") {
  const auto fixtures = reference_fixtures(ModelParams{0.0, 0.0, Mode::EdgeChoice, 0});
  const GrowthGraph& g = fixtures.back();
  for (double delta : {0.0, 0.5, 2.0, 5.0}) {
    CAPTURE(delta);
    RandomStream a(21);
    RandomStream b(22);
    std::vector<std::uint64_t> mix(g.num_vertices(), 0);
    std::vector<std::uint64_t> rej(g.num_vertices(), 0);
    for (int i = 0; i < 500'000; ++i) {
      ++mix[sample_pa_vertex_mixture(g.endpoints(), g.num_vertices(), g.num_edges(), delta, a)];
      ++rej[sample_pa_vertex_rejection(g.degrees(), g.endpoints(), g.num_edges(), delta, b)
                .vertex];
    }
    CHECK(chi_square_homogeneity(mix, rej).accepts(kSignificance));
    RandomStream c(23);
    CHECK(sampler_exactness_test(g, delta, 500'000, c, PaMethod::Rejection)
              .accepts(kSignificance));
  }
}

TEST_CASE("rejection trials stay small on grown graphs") {
  for (double alpha : {0.0, 0.5}) {
    for (double delta : {-0.9, -0.5}) {
      const GrowthGraph g = run(ModelParams{alpha, delta, Mode::EdgeChoice, 3}, 10'000);
      RandomStream rng(31);
      std::uint64_t trials = 0;
      constexpr int kSamples = 200'000;
      for (int i = 0; i < kSamples; ++i) {
        trials += sample_pa_vertex_rejection(g.degrees(), g.endpoints(), g.num_edges(), delta,
                                             rng)
                      .trials;
      }
      const double mean = static_cast<double>(trials) / kSamples;
      const double stubs = 2.0 * static_cast<double>(g.num_edges());
      const double expected = stubs / (stubs + delta * static_cast<double>(g.num_vertices()));
      CAPTURE(alpha);
      CAPTURE(delta);
      CHECK(mean <= 2.5);
      CHECK(mean == doctest::Approx(expected).epsilon(0.01));
    }
  }
}

TEST_CASE("uniform edge draws") {
  RandomStream rng(41);
  for (int i = 0; i < 100; ++i) CHECK(sample_uniform_edge(1, rng) == 0);

  for (std::uint64_t m : {3u, 4u}) {
    std::vector<std::uint64_t> counts(m, 0);
    for (int i = 0; i < 1'000'000; ++i) ++counts[sample_uniform_edge(m, rng)];
    CHECK(chi_square_gof(counts, std::vector<double>(m, 1.0 / static_cast<double>(m)))
              .accepts(kSignificance));
  }

  CHECK_THROWS_AS(sample_uniform_edge(0, rng), StateError);
}

TEST_CASE("homogeneity test rejects malformed input") {
  const std::vector<std::uint64_t> a = {5, 7, 0};
  const std::vector<std::uint64_t> empty = {0, 0, 0};
  const std::vector<std::uint64_t> shorter = {1, 2};
  CHECK_THROWS_AS(chi_square_homogeneity(a, empty), ParameterError);
  CHECK_THROWS_AS(chi_square_homogeneity(a, shorter), ParameterError);
  const auto same = chi_square_homogeneity(a, a);
  CHECK(same.statistic == doctest::Approx(0.0));
  CHECK(same.dof == 1);
}
