#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "triadgraph/metrics.hpp"
#include "triadgraph/params.hpp"
#include "triadgraph/theory.hpp"

namespace triadgraph {

struct Tolerances {
  double degree_max_error = 0.01;
  double clustering_eps = 0.005;
  double clustering_fraction = 0.95;
  double triangle_rate = 0.005;
  double slope = 0.05;
  double slope_super = 0.07;
  double flatness_lo = 0.6;
  double flatness_hi = 1.7;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct ExperimentConfig {
  ModelParams params;  // params.seed is the base seed
  std::uint64_t replicas = 1;
  std::vector<std::uint64_t> time_grid;  // sorted ascending
  std::uint32_t l_lo = 1;
  std::uint32_t l_hi = 20;
  std::size_t l_max = kDefaultLMax;
  std::filesystem::path output_dir = "triadgraph_out";
  int workers = 1;
  bool joint = false;
  Tolerances tolerances;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ConfigError on R = 0, unsorted/empty grid, bad l range or invalid
/// model parameters.
void validate(const ExperimentConfig& config);

/// Parses the JSON config. Unknown keys are rejected with a ConfigError that
/// names them. Required: alpha, delta, replicas, time_grid.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// round(10^e) for e = lo, lo + step, ..., hi (deduplicated, ascending).
std::vector<std::uint64_t> geometric_grid(double lo_exponent, double hi_exponent,
                                          double step = 0.5);

/// stats[r][k] is replica r at time times[k].
struct ReplicaResults {
  std::vector<std::uint64_t> times;
  std::vector<std::vector<SnapshotStats>> stats;
};

/// Reference implementation: replicas one after another.
ReplicaResults run_replicas_serial(const ExperimentConfig& config);

/// Replicas spread over `config.workers` OpenMP threads. Replica r always uses
/// derive_stream(seed, r), so the result equals run_replicas_serial.
ReplicaResults run_replicas(const ExperimentConfig& config);

/// Snapshot statistics of a single replica.
std::vector<SnapshotStats> run_replica(const ExperimentConfig& config,
                                       std::uint64_t replica);

struct DegreeTestResult {
  std::uint64_t t = 0;
  std::vector<std::uint32_t> degrees;
  std::vector<double> empirical;  // replica mean of N(l; t) / t
  std::vector<double> predicted;
  double max_error = 0.0;
};

/// Final-time comparison of N(l;t)/t against p(l) for l in [l_lo, l_hi].
DegreeTestResult degree_distribution_test(const ReplicaResults& results,
                                          const TheoryTable& theory,
                                          std::uint32_t l_lo, std::uint32_t l_hi);

struct ClusteringTestResult {
  double bound = 0.0;  // alpha p(2)
  double eps = 0.0;
  std::vector<double> c1;  // per replica, final time
  double fraction = 0.0;   // share of replicas with C1 >= bound - eps
};

ClusteringTestResult local_clustering_test(const ReplicaResults& results,
                                           const TheoryTable& theory,
                                           double eps = 0.005);

struct TriangleRateResult {
  std::vector<double> deviation;  // |T_t / t - alpha| per replica
  double mean_deviation = 0.0;
};

TriangleRateResult triangle_rate_test(const ReplicaResults& results, double alpha);

enum class Observable { C2Mean, TriplesMean };

std::string_view to_string(Observable observable) noexcept;

/// Log-log fit of a replica-mean observable against t.
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (log t, log mean)
  /// mean * ln t for C2, mean / (t ln t) for triples, per grid time.
  std::vector<double> flatness;
  double flatness_ratio = 0.0;  // max / min of `flatness`
};

/// Needs >= 4 grid times spanning >= 2 decades, all present in `results`.
/// Throws ParameterError otherwise and UndefinedMetricError when a mean is
/// not positive.
ScalingFit scaling_fit(const ReplicaResults& results, Observable observable,
                       std::span<const std::uint64_t> grid);

struct TestVerdict {
  std::string name;
  std::string status;  // "pass", "fail" or "skipped"
  nlohmann::json measured;
  nlohmann::json expected;
  nlohmann::json tolerance;
  std::string detail;
};

struct ExperimentReport {
  nlohmann::json config;
  std::vector<TestVerdict> tests;

  bool passed() const noexcept;
};

/// Runs the verdict tests that apply to the configuration: degree law,
/// triangle rate, local clustering and (when the grid allows) the C2 and
/// connected-triples scaling classes.
ExperimentReport evaluate(const ExperimentConfig& config, const ReplicaResults& results);

nlohmann::json to_json(const ExperimentReport& report);

/// Writes verdict.json, stats.csv and deghist_<t>.csv into `output_dir`
/// (created if missing). Deterministic except for the `generated_at` field.
void write_report(const ExperimentReport& report, const ReplicaResults& results,
                  const std::filesystem::path& output_dir);

/// run_replicas + evaluate + write_report.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace triadgraph
