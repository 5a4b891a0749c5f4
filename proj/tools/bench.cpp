// Compares the serial replica runner with the OpenMP one and reports the raw
// growth rate of a single replica.
//
//   triadgraph_bench [--steps N] [--replicas R] [--workers W]

#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <omp.h>

#include "triadgraph/experiments.hpp"
#include "triadgraph/graph.hpp"

namespace tg = triadgraph;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t steps = 1'000'000;
  std::uint64_t replicas = 8;
  int workers = omp_get_max_threads();
  double alpha = 0.5;
  double delta = 1.0;

  CLI::App app{"triadgraph replica benchmark"};
  app.add_option("--steps", steps)->capture_default_str();
  app.add_option("--replicas", replicas)->capture_default_str();
  app.add_option("--workers", workers)->capture_default_str();
  app.add_option("--alpha", alpha)->capture_default_str();
  app.add_option("--delta", delta)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const tg::ModelParams params{alpha, delta, tg::Mode::EdgeChoice, 42};
  std::uint64_t edges = 0;
  const double single = seconds([&] { edges = tg::run(params, steps).num_edges(); });
  fmt::print("single replica: {} steps in {:.3f} s ({:.3g} steps/s, |E| = {})\n", steps, single,
             static_cast<double>(steps) / single, edges);

  tg::ExperimentConfig config;
  config.params = params;
  config.replicas = replicas;
  config.time_grid = {steps / 100, steps / 10, steps};
  config.workers = workers;

  tg::ReplicaResults serial;
  tg::ReplicaResults parallel;
  const double t_serial = seconds([&] { serial = tg::run_replicas_serial(config); });
  const double t_parallel = seconds([&] { parallel = tg::run_replicas(config); });
  const bool same = serial.stats == parallel.stats;
  fmt::print("serial   : {} replicas in {:.3f} s\n", replicas, t_serial);
  fmt::print("parallel : {} replicas in {:.3f} s on {} workers (speedup {:.2f}x)\n", replicas,
             t_parallel, workers, t_serial / t_parallel);
  fmt::print("results identical: {}\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
