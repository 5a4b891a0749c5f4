#include "triadgraph/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>
#include <omp.h>

#include "triadgraph/errors.hpp"
#include "triadgraph/graph.hpp"
#include "triadgraph/graph_io.hpp"
#include "triadgraph/stats.hpp"

namespace triadgraph {

using nlohmann::json;

void validate(const ExperimentConfig& config) {
  try {
    validate(config.params);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  if (config.replicas == 0) throw ConfigError("replicas must be >= 1");
  if (config.time_grid.empty()) throw ConfigError("time_grid must not be empty");
  if (!std::is_sorted(config.time_grid.begin(), config.time_grid.end())) {
    throw ConfigError("time_grid must be sorted ascending");
  }
  if (config.l_lo < 1 || config.l_hi < config.l_lo) {
    throw ConfigError("l_range must satisfy 1 <= lo <= hi");
  }
  if (config.l_max < 2 || config.l_max < config.l_hi) {
    throw ConfigError("l_max must be >= 2 and >= the upper end of l_range");
  }
  if (config.workers < 1) throw ConfigError("workers must be >= 1");
}

namespace {

const std::set<std::string> kConfigKeys = {
    "alpha", "delta",   "mode",    "seed",  "replicas",  "time_grid",
    "l_range", "l_max", "output_dir", "workers", "joint", "tolerances"};

const std::set<std::string> kToleranceKeys = {
    "degree_max_error", "clustering_eps", "clustering_fraction", "triangle_rate",
    "slope",            "slope_super",    "flatness_lo",         "flatness_hi"};

template <typename T>
T get_field(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("field '{}': {}", key, e.what()));
  }
}

void reject_unknown(const json& doc, const std::set<std::string>& known,
                    std::string_view where) {
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) {
      throw ConfigError(fmt::format("unknown field '{}'{}", key, where));
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc, kConfigKeys, "");
  for (const char* key : {"alpha", "delta", "replicas", "time_grid"}) {
    if (!doc.contains(key)) throw ConfigError(fmt::format("missing field '{}'", key));
  }

  ExperimentConfig config;
  config.params.alpha = get_field<double>(doc, "alpha");
  config.params.delta = get_field<double>(doc, "delta");
  if (doc.contains("mode")) {
    const auto text = get_field<std::string>(doc, "mode");
    const auto mode = parse_mode(text);
    if (!mode) throw ConfigError(fmt::format("field 'mode': unknown mode '{}'", text));
    config.params.mode = *mode;
  }
  if (doc.contains("seed")) config.params.seed = get_field<std::uint64_t>(doc, "seed");
  if (doc.at("replicas").is_number_integer() && doc.at("replicas").get<long long>() < 0) {
    throw ConfigError("field 'replicas' must be non-negative");
  }
  config.replicas = get_field<std::uint64_t>(doc, "replicas");
  config.time_grid = get_field<std::vector<std::uint64_t>>(doc, "time_grid");
  if (doc.contains("l_range")) {
    const auto range = get_field<std::vector<std::uint32_t>>(doc, "l_range");
    if (range.size() != 2) throw ConfigError("field 'l_range' must be [lo, hi]");
    config.l_lo = range[0];
    config.l_hi = range[1];
  }
  if (doc.contains("l_max")) config.l_max = get_field<std::size_t>(doc, "l_max");
  if (doc.contains("output_dir")) {
    config.output_dir = get_field<std::string>(doc, "output_dir");
  }
  if (doc.contains("workers")) config.workers = get_field<int>(doc, "workers");
  if (doc.contains("joint")) config.joint = get_field<bool>(doc, "joint");
  if (doc.contains("tolerances")) {
    const json& tol = doc.at("tolerances");
    if (!tol.is_object()) throw ConfigError("field 'tolerances' must be an object");
    reject_unknown(tol, kToleranceKeys, " in 'tolerances'");
    auto set = [&](const char* key, double& slot) {
      if (tol.contains(key)) slot = get_field<double>(tol, key);
    };
    Tolerances& t = config.tolerances;
    set("degree_max_error", t.degree_max_error);
    set("clustering_eps", t.clustering_eps);
    set("clustering_fraction", t.clustering_fraction);
    set("triangle_rate", t.triangle_rate);
    set("slope", t.slope);
    set("slope_super", t.slope_super);
    set("flatness_lo", t.flatness_lo);
    set("flatness_hi", t.flatness_hi);
  }
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config '{}' is not valid JSON: {}", path.string(), e.what()));
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& config) {
  const Tolerances& t = config.tolerances;
  return json{
      {"alpha", config.params.alpha},
      {"delta", config.params.delta},
      {"mode", std::string(to_string(config.params.mode))},
      {"seed", config.params.seed},
      {"replicas", config.replicas},
      {"time_grid", config.time_grid},
      {"l_range", {config.l_lo, config.l_hi}},
      {"l_max", config.l_max},
      {"output_dir", config.output_dir.string()},
      {"workers", config.workers},
      {"joint", config.joint},
      {"tolerances",
       {{"degree_max_error", t.degree_max_error},
        {"clustering_eps", t.clustering_eps},
        {"clustering_fraction", t.clustering_fraction},
        {"triangle_rate", t.triangle_rate},
        {"slope", t.slope},
        {"slope_super", t.slope_super},
        {"flatness_lo", t.flatness_lo},
        {"flatness_hi", t.flatness_hi}}},
  };
}

std::vector<std::uint64_t> geometric_grid(double lo_exponent, double hi_exponent,
                                          double step) {
  std::vector<std::uint64_t> grid;
  const auto count = static_cast<int>(std::floor((hi_exponent - lo_exponent) / step + 1e-9));
  for (int i = 0; i <= count; ++i) {
    const double e = lo_exponent + step * i;
    const auto t = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e)));
    if (grid.empty() || grid.back() != t) grid.push_back(t);
  }
  return grid;
}

std::vector<SnapshotStats> run_replica(const ExperimentConfig& config,
                                       std::uint64_t replica) {
  std::vector<SnapshotStats> out;
  out.reserve(config.time_grid.size());
  RandomStream rng = derive_stream(config.params.seed, replica);
  const bool joint = config.joint;
  run(config.params, rng, config.time_grid.back(), config.time_grid,
      [&](const GrowthGraph& g) { out.push_back(snapshot(g.view(), joint)); });
  return out;
}

namespace {

std::vector<std::uint64_t> unique_times(const std::vector<std::uint64_t>& grid) {
  std::vector<std::uint64_t> times = grid;
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace

ReplicaResults run_replicas_serial(const ExperimentConfig& config) {
  validate(config);
  ReplicaResults results;
  results.times = unique_times(config.time_grid);
  results.stats.reserve(config.replicas);
  for (std::uint64_t r = 0; r < config.replicas; ++r) {
    results.stats.push_back(run_replica(config, r));
  }
  return results;
}

ReplicaResults run_replicas(const ExperimentConfig& config) {
  validate(config);
  ReplicaResults results;
  results.times = unique_times(config.time_grid);
  results.stats.resize(config.replicas);

  std::exception_ptr failure;
  const auto replicas = static_cast<std::int64_t>(config.replicas);
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.workers)
  for (std::int64_t r = 0; r < replicas; ++r) {
    try {
      results.stats[r] = run_replica(config, static_cast<std::uint64_t>(r));
    } catch (...) {
#pragma omp critical(triadgraph_replica_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

namespace {

std::size_t time_index(const ReplicaResults& results, std::uint64_t t) {
  const auto it = std::lower_bound(results.times.begin(), results.times.end(), t);
  if (it == results.times.end() || *it != t) {
    throw ParameterError(fmt::format("time {} is not a snapshot time", t));
  }
  return static_cast<std::size_t>(it - results.times.begin());
}

void require_results(const ReplicaResults& results) {
  if (results.stats.empty() || results.times.empty()) {
    throw ParameterError("no replica results");
  }
}

}  // namespace

DegreeTestResult degree_distribution_test(const ReplicaResults& results,
                                          const TheoryTable& theory,
                                          std::uint32_t l_lo, std::uint32_t l_hi) {
  require_results(results);
  if (l_lo < 1 || l_hi < l_lo || l_hi > theory.l_max()) {
    throw ParameterError("degree range outside the theory table");
  }
  DegreeTestResult out;
  out.t = results.times.back();
  const double t = std::max<double>(1.0, static_cast<double>(out.t));
  const auto replicas = static_cast<double>(results.stats.size());
  for (std::uint32_t l = l_lo; l <= l_hi; ++l) {
    double sum = 0.0;
    for (const auto& replica : results.stats) {
      const auto& hist = replica.back().degree_hist;
      const auto it = hist.find(l);
      if (it != hist.end()) sum += static_cast<double>(it->second) / t;
    }
    const double empirical = sum / replicas;
    const double predicted = theory.p_at(l);
    out.degrees.push_back(l);
    out.empirical.push_back(empirical);
    out.predicted.push_back(predicted);
    out.max_error = std::max(out.max_error, std::abs(empirical - predicted));
  }
  return out;
}

ClusteringTestResult local_clustering_test(const ReplicaResults& results,
                                           const TheoryTable& theory, double eps) {
  require_results(results);
  ClusteringTestResult out;
  out.bound = theory.alpha * theory.p_at(2);
  out.eps = eps;
  std::size_t hits = 0;
  for (const auto& replica : results.stats) {
    const double c1 = replica.back().c1;
    out.c1.push_back(c1);
    if (c1 >= out.bound - eps) ++hits;
  }
  out.fraction = static_cast<double>(hits) / static_cast<double>(results.stats.size());
  return out;
}

TriangleRateResult triangle_rate_test(const ReplicaResults& results, double alpha) {
  require_results(results);
  TriangleRateResult out;
  double sum = 0.0;
  for (const auto& replica : results.stats) {
    const SnapshotStats& s = replica.back();
    const double rate = s.t == 0 ? alpha
                                 : static_cast<double>(s.triangles) / static_cast<double>(s.t);
    out.deviation.push_back(std::abs(rate - alpha));
    sum += out.deviation.back();
  }
  out.mean_deviation = sum / static_cast<double>(out.deviation.size());
  return out;
}

std::string_view to_string(Observable observable) noexcept {
  return observable == Observable::C2Mean ? "c2_mean" : "triples_mean";
}

ScalingFit scaling_fit(const ReplicaResults& results, Observable observable,
                       std::span<const std::uint64_t> grid) {
  require_results(results);
  if (grid.size() < 4) throw ParameterError("scaling fit needs at least 4 grid times");
  if (grid.front() == 0 ||
      static_cast<double>(grid.back()) < 100.0 * static_cast<double>(grid.front())) {
    throw ParameterError("scaling fit grid must span at least two decades of t > 0");
  }
  ScalingFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const std::uint64_t t : grid) {
    const std::size_t k = time_index(results, t);
    double sum = 0.0;
    for (const auto& replica : results.stats) {
      const SnapshotStats& s = replica[k];
      if (observable == Observable::C2Mean) {
        sum += s.c2.value_or(0.0);
      } else {
        sum += static_cast<double>(s.triples);
      }
    }
    const double mean = sum / static_cast<double>(results.stats.size());
    if (!(mean > 0.0)) {
      throw UndefinedMetricError(
          fmt::format("mean {} is not positive at t = {}", to_string(observable), t));
    }
    const double td = static_cast<double>(t);
    xs.push_back(std::log(td));
    ys.push_back(std::log(mean));
    fit.points.emplace_back(xs.back(), ys.back());
    fit.flatness.push_back(observable == Observable::C2Mean ? mean * std::log(td)
                                                            : mean / (td * std::log(td)));
  }
  const LinearFit line = ols_fit(xs, ys);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  const auto [lo, hi] = std::minmax_element(fit.flatness.begin(), fit.flatness.end());
  fit.flatness_ratio = *hi / *lo;
  return fit;
}

bool ExperimentReport::passed() const noexcept {
  return std::none_of(tests.begin(), tests.end(),
                      [](const TestVerdict& t) { return t.status == "fail"; });
}

namespace {

const char* status(bool ok) { return ok ? "pass" : "fail"; }

/// Grid times usable for a scaling fit: t > 0 and at least two decades.
std::vector<std::uint64_t> scaling_grid(const ReplicaResults& results) {
  std::vector<std::uint64_t> grid;
  for (auto t : results.times) {
    if (t > 0) grid.push_back(t);
  }
  if (grid.size() < 4 ||
      static_cast<double>(grid.back()) < 100.0 * static_cast<double>(grid.front())) {
    return {};
  }
  return grid;
}

TestVerdict scaling_verdict(const ExperimentConfig& config, const ReplicaResults& results,
                            Observable observable, const std::vector<std::uint64_t>& grid) {
  const Tolerances& tol = config.tolerances;
  const ScalingPrediction prediction =
      predicted_scalings(config.params.alpha, config.params.delta);
  TestVerdict v;
  v.name = observable == Observable::C2Mean ? "global_clustering_scaling"
                                            : "connected_triples_scaling";
  const std::string law = observable == Observable::C2Mean
                              ? std::string(to_string(prediction.c2))
                              : std::string(to_string(prediction.triples));
  const ScalingFit fit = scaling_fit(results, observable, grid);
  if (prediction.regime == Regime::Critical) {
    const bool ok = fit.flatness_ratio >= tol.flatness_lo && fit.flatness_ratio <= tol.flatness_hi;
    v.status = status(ok);
    v.measured = {{"flatness_ratio", fit.flatness_ratio}, {"slope", fit.slope}};
    v.expected = {{"law", law}, {"flatness_ratio_range", {tol.flatness_lo, tol.flatness_hi}}};
    v.tolerance = {tol.flatness_lo, tol.flatness_hi};
    v.detail = "max/min of the log-normalised mean over the grid";
    return v;
  }
  double expected = 0.0;
  double tolerance = tol.slope;
  if (prediction.regime == Regime::Sub) {
    expected = observable == Observable::C2Mean ? 0.0 : 1.0;
  } else {
    expected = observable == Observable::C2Mean ? *prediction.c2_exponent
                                                : *prediction.triples_exponent;
    tolerance = tol.slope_super;
  }
  v.status = status(std::abs(fit.slope - expected) < tolerance);
  v.measured = {{"slope", fit.slope}, {"r_squared", fit.r_squared}};
  v.expected = {{"law", law}, {"slope", expected}};
  v.tolerance = tolerance;
  v.detail = "OLS slope of log mean against log t";
  return v;
}

}  // namespace

ExperimentReport evaluate(const ExperimentConfig& config, const ReplicaResults& results) {
  ExperimentReport report;
  report.config = to_json(config);
  const Tolerances& tol = config.tolerances;
  const double alpha = config.params.alpha;
  const TheoryTable theory = degree_law(alpha, config.params.delta, config.l_max);
  const std::uint64_t t_final = results.times.back();

  {
    const DegreeTestResult r = degree_distribution_test(results, theory, config.l_lo, config.l_hi);
    TestVerdict v;
    v.name = "degree_distribution";
    v.status = status(r.max_error < tol.degree_max_error);
    v.measured = {{"max_error", r.max_error}, {"t", r.t}, {"empirical", r.empirical}};
    v.expected = {{"p", r.predicted}, {"l_range", {config.l_lo, config.l_hi}}};
    v.tolerance = tol.degree_max_error;
    v.detail = "max_l |mean N(l;t)/t - p(l)|";
    report.tests.push_back(std::move(v));
  }
  {
    TestVerdict v;
    v.name = "triangle_rate";
    if (t_final == 0) {
      v.status = "skipped";
      v.detail = "final time is 0";
    } else {
      const TriangleRateResult r = triangle_rate_test(results, alpha);
      v.status = status(r.mean_deviation < tol.triangle_rate);
      v.measured = {{"mean_deviation", r.mean_deviation}};
      v.expected = {{"rate", alpha}};
      v.tolerance = tol.triangle_rate;
      v.detail = "replica mean of |T_t/t - alpha|";
    }
    report.tests.push_back(std::move(v));
  }
  {
    const ClusteringTestResult r = local_clustering_test(results, theory, tol.clustering_eps);
    TestVerdict v;
    v.name = "local_clustering";
    v.status = status(r.fraction >= tol.clustering_fraction);
    v.measured = {{"fraction", r.fraction}, {"c1", r.c1}};
    v.expected = {{"bound", r.bound}, {"min_fraction", tol.clustering_fraction}};
    v.tolerance = tol.clustering_eps;
    v.detail = "share of replicas with C1(t) >= alpha p(2) - eps";
    report.tests.push_back(std::move(v));
  }

  const auto grid = scaling_grid(results);
  for (const Observable observable : {Observable::C2Mean, Observable::TriplesMean}) {
    if (grid.empty()) {
      TestVerdict v;
      v.name = observable == Observable::C2Mean ? "global_clustering_scaling"
                                                : "connected_triples_scaling";
      v.status = "skipped";
      v.detail = "time grid needs >= 4 positive times spanning two decades";
      report.tests.push_back(std::move(v));
      continue;
    }
    if (observable == Observable::C2Mean && alpha == 0.0) {
      report.tests.push_back(TestVerdict{"global_clustering_scaling", "skipped", nullptr,
                                         nullptr, nullptr, "alpha = 0 has no triangles"});
      continue;
    }
    report.tests.push_back(scaling_verdict(config, results, observable, grid));
  }
  return report;
}

json to_json(const ExperimentReport& report) {
  json tests = json::array();
  for (const TestVerdict& t : report.tests) {
    tests.push_back({{"name", t.name},
                     {"status", t.status},
                     {"measured", t.measured},
                     {"expected", t.expected},
                     {"tolerance", t.tolerance},
                     {"detail", t.detail}});
  }
  return json{{"config", report.config},
              {"tests", tests},
              {"verdict", report.passed() ? "pass" : "fail"}};
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace

void write_report(const ExperimentReport& report, const ReplicaResults& results,
                  const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) {
    throw IoError(fmt::format("cannot create '{}': {}", output_dir.string(), ec.message()));
  }

  json verdict = to_json(report);
  verdict["generated_at"] = utc_timestamp();
  const auto verdict_path = output_dir / "verdict.json";
  auto verdict_out = open_output(verdict_path);
  verdict_out << verdict.dump(2) << '\n';
  finish(verdict_out, verdict_path);

  const auto stats_path = output_dir / "stats.csv";
  auto stats_out = open_output(stats_path);
  stats_out << "replica,t,num_edges,triangles,triples,c1,c2\n";
  for (std::size_t r = 0; r < results.stats.size(); ++r) {
    for (const SnapshotStats& s : results.stats[r]) {
      stats_out << fmt::format("{},{},{},{},{},{},{}\n", r, s.t, s.num_edges, s.triangles,
                               s.triples, format_double(s.c1),
                               s.c2 ? format_double(*s.c2) : std::string("nan"));
    }
  }
  finish(stats_out, stats_path);

  for (std::size_t k = 0; k < results.times.size(); ++k) {
    DegreeHistogram total;
    for (const auto& replica : results.stats) {
      for (const auto& [l, count] : replica[k].degree_hist) total[l] += count;
    }
    const auto path = output_dir / fmt::format("deghist_{}.csv", results.times[k]);
    auto out = open_output(path);
    out << "l,count\n";
    for (const auto& [l, count] : total) out << l << ',' << count << '\n';
    finish(out, path);
  }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const ReplicaResults results = run_replicas(config);
  ExperimentReport report = evaluate(config, results);
  write_report(report, results, config.output_dir);
  return report;
}

}  // namespace triadgraph
