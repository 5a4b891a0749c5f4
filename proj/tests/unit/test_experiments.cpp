#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "triadgraph/errors.hpp"
#include "triadgraph/experiments.hpp"

using namespace triadgraph;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json verdict_without_timestamp(const fs::path& dir) {
  json doc = json::parse(slurp(dir / "verdict.json"));
  doc.erase("generated_at");
  return doc;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("triadgraph_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_config(double alpha, double delta, std::uint64_t replicas,
                              std::vector<std::uint64_t> grid) {
  ExperimentConfig c;
  c.params = ModelParams{alpha, delta, Mode::EdgeChoice, 2024};
  c.replicas = replicas;
  c.time_grid = std::move(grid);
  return c;
}

std::string config_error(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const json doc = {{"alpha", 0.5}, {"delta", 1.0},    {"seed", 9},
                    {"replicas", 3}, {"time_grid", {10, 100}}, {"l_range", {1, 5}},
                    {"workers", 2},  {"tolerances", {{"slope", 0.1}}}};
  const ExperimentConfig c = parse_config(doc);
  CHECK(c.params.alpha == 0.5);
  CHECK(c.params.seed == 9);
  CHECK(c.replicas == 3);
  CHECK(c.l_hi == 5);
  CHECK(c.workers == 2);
  CHECK(c.tolerances.slope == 0.1);
  CHECK(c.tolerances.slope_super == 0.07);
  CHECK(parse_config(to_json(c)) == c);

  json bad = doc;
  bad["replicas"] = 0;
  CHECK(config_error(bad).find("replicas") != std::string::npos);

  bad = doc;
  bad["colour"] = "red";
  CHECK(config_error(bad).find("'colour'") != std::string::npos);

  bad = doc;
  bad["tolerances"]["wiggle"] = 1.0;
  CHECK(config_error(bad).find("'wiggle'") != std::string::npos);

  bad = doc;
  bad.erase("time_grid");
  CHECK(config_error(bad).find("time_grid") != std::string::npos);

  bad = doc;
  bad["time_grid"] = {100, 10};
  CHECK_FALSE(config_error(bad).empty());

  bad = doc;
  bad["mode"] = "TwoStage";
  CHECK_FALSE(config_error(bad).empty());

  bad = doc;
  bad["alpha"] = "half";
  CHECK(config_error(bad).find("alpha") != std::string::npos);

  CHECK_THROWS_AS(load_config("/nonexistent.json"), IoError);
}

TEST_CASE("geometric grid") {
  CHECK(geometric_grid(3, 6) ==
        std::vector<std::uint64_t>{1000, 3162, 10000, 31623, 100000, 316228, 1000000});
  CHECK(geometric_grid(4, 6) == std::vector<std::uint64_t>{10000, 31623, 100000, 316228,
                                                           1000000});
}

TEST_CASE("replica runs") {
  const ReplicaResults single = run_replicas(small_config(0.5, 1.0, 1, {0}));
  REQUIRE(single.stats.size() == 1);
  REQUIRE(single.stats[0].size() == 1);
  CHECK(single.stats[0][0].t == 0);
  CHECK(single.stats[0][0].num_edges == 1);
  CHECK(single.stats[0][0].degree_hist == DegreeHistogram{{1, 2}});

  const ReplicaResults two = run_replicas(small_config(0.5, 1.0, 2, {100, 1000}));
  CHECK_FALSE(two.stats[0] == two.stats[1]);
}

TEST_CASE("parallel replicas equal the serial reference") {
  ExperimentConfig c = small_config(0.3, 2.0, 12, {10, 1000, 5000});
  const ReplicaResults serial = run_replicas_serial(c);
  c.workers = 8;
  const ReplicaResults parallel = run_replicas(c);
  CHECK(serial.times == parallel.times);
  CHECK(serial.stats == parallel.stats);
}

TEST_CASE("degree distribution test") {
  const ExperimentConfig c = small_config(1.0, 0.0, 5, {10'000});
  const ReplicaResults r = run_replicas(c);
  const DegreeTestResult d = degree_distribution_test(r, degree_law(1.0, 0.0, 100), 1, 20);
  CHECK(d.empirical[0] < 0.005);
  CHECK(d.predicted[0] == 0.0);
  CHECK(d.max_error < 0.02);
  CHECK_THROWS_AS(degree_distribution_test(r, degree_law(1.0, 0.0, 10), 1, 20), ParameterError);
}

TEST_CASE("local clustering and triangle rate at the extremes") {
  const ReplicaResults tree = run_replicas(small_config(0.0, 1.0, 4, {2'000}));
  const ClusteringTestResult lc = local_clustering_test(tree, degree_law(0.0, 1.0, 10));
  CHECK(lc.bound == 0.0);
  CHECK(lc.fraction == 1.0);
  const TriangleRateResult none = triangle_rate_test(tree, 0.0);
  for (double d : none.deviation) CHECK(d == 0.0);

  const ReplicaResults full = run_replicas(small_config(1.0, 0.0, 4, {2'000}));
  for (const auto& replica : full.stats) CHECK(replica.back().triangles == 2'000);
  CHECK(triangle_rate_test(full, 1.0).mean_deviation == 0.0);
}

TEST_CASE("scaling fit preconditions") {
  const ReplicaResults r = run_replicas(small_config(0.0, 0.0, 2, {10, 100, 1000, 10000}));
  const std::vector<std::uint64_t> grid = {10, 100, 1000, 10000};
  const std::vector<std::uint64_t> short_grid = {100, 1000, 10000};
  const std::vector<std::uint64_t> narrow = {1000, 2000, 5000, 9000};
  CHECK_THROWS_AS(scaling_fit(r, Observable::TriplesMean, short_grid), ParameterError);
  CHECK_THROWS_AS(scaling_fit(r, Observable::TriplesMean, narrow), ParameterError);
  CHECK_THROWS_AS(scaling_fit(r, Observable::C2Mean, grid), UndefinedMetricError);
  const ScalingFit fit = scaling_fit(r, Observable::TriplesMean, grid);
  CHECK(fit.points.size() == 4);
  CHECK(fit.r_squared > 0.9);
  CHECK(fit.flatness_ratio >= 1.0);
}

TEST_CASE("variance of N(l;t)/t shrinks with t") {
  const ReplicaResults r = run_replicas(small_config(0.5, 1.0, 20, {1'000, 100'000}));
  for (std::uint32_t l : {1u, 2u, 3u}) {
    std::vector<double> var(2, 0.0);
    for (std::size_t k = 0; k < 2; ++k) {
      const double t = static_cast<double>(r.times[k]);
      double mean = 0.0;
      double sq = 0.0;
      for (const auto& replica : r.stats) {
        const auto it = replica[k].degree_hist.find(l);
        const double x = it == replica[k].degree_hist.end() ? 0.0 : it->second / t;
        mean += x;
        sq += x * x;
      }
      mean /= 20.0;
      var[k] = sq / 20.0 - mean * mean;
    }
    CAPTURE(l);
    CHECK(var[1] < var[0]);
  }
}

TEST_CASE("reports are deterministic and record failures") {
  const ExperimentConfig c = small_config(0.5, 0.0, 3, {100, 1000, 10000, 100000});
  ExperimentConfig first = c;
  first.output_dir = scratch("first");
  ExperimentConfig second = c;
  second.output_dir = scratch("second");
  const ExperimentReport a = run_experiment(first);
  run_experiment(second);
  for (const char* name : {"stats.csv", "deghist_100.csv", "deghist_100000.csv"}) {
    CHECK(slurp(first.output_dir / name) == slurp(second.output_dir / name));
  }
  json va = verdict_without_timestamp(first.output_dir);
  json vb = verdict_without_timestamp(second.output_dir);
  va["config"].erase("output_dir");
  vb["config"].erase("output_dir");
  CHECK(va == vb);
  CHECK(va["tests"].size() == 5);
  CHECK(slurp(first.output_dir / "stats.csv").rfind("replica,t,num_edges,triangles,triples,c1,c2\n", 0) == 0);

  ExperimentConfig strict = c;
  strict.output_dir = scratch("strict");
  strict.tolerances.degree_max_error = 1e-12;
  const ExperimentReport failing = run_experiment(strict);
  CHECK_FALSE(failing.passed());
  const json doc = json::parse(slurp(strict.output_dir / "verdict.json"));
  CHECK(doc["verdict"] == "fail");
  CHECK(doc["tests"][0]["status"] == "fail");
  CHECK(doc["tests"][0]["measured"].contains("max_error"));
  CHECK(doc["tests"][0]["tolerance"] == 1e-12);
  (void)a;
}

TEST_CASE("empty report is valid JSON") {
  const fs::path dir = scratch("empty");
  write_report(ExperimentReport{}, ReplicaResults{}, dir);
  const json doc = json::parse(slurp(dir / "verdict.json"));
  CHECK(doc["tests"].empty());
  CHECK(doc["verdict"] == "pass");
  CHECK(doc.contains("generated_at"));
}
