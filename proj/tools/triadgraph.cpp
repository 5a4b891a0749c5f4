// triadgraph: grow, inspect and validate preferential-attachment graphs with
// triangle closure.
//
// Exit codes: 0 success, 1 verdict/validation failure, 2 usage or input error.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "triadgraph/errors.hpp"
#include "triadgraph/experiments.hpp"
#include "triadgraph/graph.hpp"
#include "triadgraph/graph_io.hpp"
#include "triadgraph/metrics.hpp"
#include "triadgraph/theory.hpp"
#include "triadgraph/validation.hpp"

namespace tg = triadgraph;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

/// Usage problem detected after CLI11 parsing; message names the flag.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_decimal(const std::string& flag, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [end, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || end != last) {
    throw UsageError(fmt::format("{}: '{}' is not a decimal number", flag, text));
  }
  return value;
}

double parse_alpha(const std::string& text) {
  const double alpha = parse_decimal("--alpha", text);
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw UsageError(fmt::format("--alpha: {} is outside [0, 1]", text));
  }
  return alpha;
}

double parse_delta(const std::string& text) {
  const double delta = parse_decimal("--delta", text);
  if (!(delta > -1.0) || !std::isfinite(delta)) {
    throw UsageError(fmt::format("--delta: {} must be finite and > -1", text));
  }
  return delta;
}

tg::Mode parse_mode_flag(const std::string& text) {
  const auto mode = tg::parse_mode(text);
  if (!mode) throw UsageError(fmt::format("--mode: '{}' is not EdgeChoice or TwoStage", text));
  return *mode;
}

void emit_json(const json& line) { std::cout << "#json " << line.dump() << '\n'; }

json stats_json(const tg::SnapshotStats& s) {
  return json{{"t", s.t},
              {"num_edges", s.num_edges},
              {"triangles", s.triangles},
              {"triples", s.triples},
              {"c1", s.c1},
              {"c2", s.c2 ? json(*s.c2) : json(nullptr)}};
}

std::string stats_row(const tg::SnapshotStats& s) {
  return fmt::format("{},{},{},{},{},{}", s.t, s.num_edges, s.triangles, s.triples,
                     tg::format_double(s.c1),
                     s.c2 ? tg::format_double(*s.c2) : std::string("nan"));
}

constexpr const char* kStatsHeader = "t,num_edges,triangles,triples,c1,c2";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tg::IoError(fmt::format("cannot open '{}' for writing", path.string()));
  return out;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string alpha = "0";
  std::string delta = "0";
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::string mode = "EdgeChoice";
  std::string out = "graph.txt";
};

int run_generate(const GenerateArgs& args) {
  tg::ModelParams params;
  params.alpha = parse_alpha(args.alpha);
  params.delta = parse_delta(args.delta);
  params.mode = parse_mode_flag(args.mode);
  params.seed = args.seed;
  try {
    tg::validate(params);
  } catch (const tg::ParameterError& e) {
    throw UsageError(fmt::format("--mode/--delta: {}", e.what()));
  }
  const tg::GrowthGraph graph = tg::run(params, args.steps);
  tg::write_graph_file(args.out, graph);
  const tg::SnapshotStats s = tg::snapshot(graph.view());
  std::cout << kStatsHeader << '\n' << stats_row(s) << '\n';
  json line = stats_json(s);
  line["command"] = "generate";
  line["vertices"] = graph.num_vertices();
  line["out"] = args.out;
  emit_json(line);
  return kOk;
}

// ------------------------------------------------------------------ theory

struct TheoryArgs {
  std::string alpha = "0";
  std::string delta = "0";
  std::size_t lmax = tg::kDefaultLMax;
  std::string out;
};

int run_theory(const TheoryArgs& args) {
  const double alpha = parse_alpha(args.alpha);
  const double delta = parse_delta(args.delta);
  if (args.lmax < 2) throw UsageError("--lmax: must be >= 2");
  const tg::TheoryTable table = tg::degree_law(alpha, delta, args.lmax);
  const json header{{"alpha", alpha},
                    {"delta", delta},
                    {"A", table.A},
                    {"B", table.B},
                    {"gamma", table.gamma},
                    {"regime", std::string(tg::to_string(table.regime))}};
  std::cout << fmt::format("A={} B={} gamma={} regime={}\n", tg::format_double(table.A),
                           tg::format_double(table.B), tg::format_double(table.gamma),
                           tg::to_string(table.regime));
  if (!args.out.empty()) {
    auto out = open_out(args.out);
    out << "# " << header.dump() << '\n' << "l,p_l,A_l\n";
    for (std::size_t l = 1; l <= table.l_max(); ++l) {
      out << l << ',' << tg::format_double(table.p_at(l)) << ','
          << tg::format_double(table.A_l(l)) << '\n';
    }
    if (!out.flush()) throw tg::IoError(fmt::format("write to '{}' failed", args.out));
  }
  json line = header;
  line["command"] = "theory";
  emit_json(line);
  return kOk;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string in;
  bool joint = false;
  std::string out;
};

int run_analyze(const AnalyzeArgs& args) {
  const tg::StaticGraph graph = tg::read_graph_file(args.in);
  const tg::SnapshotStats s = tg::snapshot(graph.view(), args.joint);
  std::cout << kStatsHeader << '\n' << stats_row(s) << '\n';
  if (!args.out.empty()) {
    const std::filesystem::path dir = args.out;
    std::filesystem::create_directories(dir);
    auto stats = open_out(dir / "stats.csv");
    stats << kStatsHeader << '\n' << stats_row(s) << '\n';
    auto deg = open_out(dir / "deghist.csv");
    deg << "l,count\n";
    for (const auto& [l, count] : s.degree_hist) deg << l << ',' << count << '\n';
    if (s.joint_hist) {
      auto joint = open_out(dir / "joint.csv");
      joint << "l,m,count\n";
      for (const auto& [key, count] : *s.joint_hist) {
        joint << key.first << ',' << key.second << ',' << count << '\n';
      }
    }
  }
  json line = stats_json(s);
  line["command"] = "analyze";
  line["in"] = args.in;
  emit_json(line);
  return kOk;
}

// -------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string config;
  std::optional<std::string> alpha;
  std::optional<std::string> delta;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> replicas;
  std::optional<int> workers;
  std::optional<std::string> output_dir;
};

int run_experiment_cmd(const ExperimentArgs& args) {
  std::ifstream in(args.config);
  if (!in) throw UsageError(fmt::format("--config: cannot open '{}'", args.config));
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("--config: '{}' is not valid JSON ({})", args.config, e.what()));
  }
  // Flags take precedence over config-file values.
  if (doc.is_object()) {
    if (args.alpha) doc["alpha"] = parse_alpha(*args.alpha);
    if (args.delta) doc["delta"] = parse_delta(*args.delta);
    if (args.mode) doc["mode"] = *args.mode;
    if (args.seed) doc["seed"] = *args.seed;
    if (args.replicas) doc["replicas"] = *args.replicas;
    if (args.workers) doc["workers"] = *args.workers;
    if (args.output_dir) doc["output_dir"] = *args.output_dir;
  }
  const tg::ExperimentConfig config = tg::parse_config(doc);
  const tg::ExperimentReport report = tg::run_experiment(config);
  for (const auto& t : report.tests) {
    std::cout << fmt::format("{:<28} {}\n", t.name, t.status);
  }
  json line{{"command", "experiment"},
            {"verdict", report.passed() ? "pass" : "fail"},
            {"output_dir", config.output_dir.string()}};
  emit_json(line);
  return report.passed() ? kOk : kFailed;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::uint64_t t = 200;
  std::uint64_t seeds = 100;
  std::optional<std::string> alpha;
  std::optional<std::string> delta;
  std::uint64_t draws = 1'000'000;
  std::uint64_t trials = 100'000;
};

int run_validate(const ValidateArgs& args) {
  tg::ValidationOptions options;
  options.t = args.t;
  options.seeds = args.seeds;
  options.draws = args.draws;
  options.equivalence_trials = args.trials;
  if (args.alpha || args.delta) {
    options.grid = {{args.alpha ? parse_alpha(*args.alpha) : 0.5,
                     args.delta ? parse_delta(*args.delta) : 0.0}};
  }
  if (args.t + 2 > tg::kBruteForceMaxVertices) {
    throw UsageError(fmt::format("--t: {} exceeds the oracle size guard ({} vertices)", args.t,
                                 tg::kBruteForceMaxVertices));
  }
#ifdef TRIADGRAPH_INJECT_FAULT
  options.tamper = [](tg::SnapshotStats& s) {
    if (s.t > 0) ++s.triangles;
  };
#endif
  const tg::ValidationReport report = tg::validate_oracles(options);
  json checks = json::array();
  for (const auto& c : report.checks) {
    std::cout << fmt::format("{} {:<40} {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  emit_json({{"command", "validate"}, {"passed", report.passed()}, {"checks", checks}});
  return report.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preferential attachment with triangles: simulator and validation suite"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "grow a graph and write it in export format");
  generate->add_option("--alpha", gen.alpha, "triangle-step probability in [0, 1]");
  generate->add_option("--delta", gen.delta, "attractiveness, > -1");
  generate->add_option("--steps", gen.steps, "number of growth steps");
  generate->add_option("--seed", gen.seed, "64-bit seed");
  generate->add_option("--mode", gen.mode, "EdgeChoice or TwoStage");
  generate->add_option("--out", gen.out, "output graph file")->capture_default_str();

  TheoryArgs th;
  auto* theory = app.add_subcommand("theory", "print A, B, gamma, regime; write p(l) table");
  theory->add_option("--alpha", th.alpha);
  theory->add_option("--delta", th.delta);
  theory->add_option("--lmax", th.lmax)->capture_default_str();
  theory->add_option("--out", th.out, "CSV file for l,p_l,A_l");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "compute observables of a graph file");
  analyze->add_option("--in", an.in)->required();
  analyze->add_flag("--joint", an.joint, "also compute the joint degree histogram");
  analyze->add_option("--out", an.out, "directory for stats.csv, deghist.csv, joint.csv");

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "run replicated simulations and verdicts");
  experiment->add_option("--config", ex.config)->required();
  experiment->add_option("--alpha", ex.alpha);
  experiment->add_option("--delta", ex.delta);
  experiment->add_option("--mode", ex.mode);
  experiment->add_option("--seed", ex.seed);
  experiment->add_option("--replicas", ex.replicas);
  experiment->add_option("--workers", ex.workers)->envname("TRIADGRAPH_WORKERS");
  experiment->add_option("--output_dir", ex.output_dir);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "differential oracle and sampler checks");
  validate->add_option("--t", va.t)->capture_default_str();
  validate->add_option("--seeds", va.seeds)->capture_default_str();
  validate->add_option("--alpha", va.alpha);
  validate->add_option("--delta", va.delta);
  validate->add_option("--draws", va.draws, "draws per sampler chi-square test")
      ->capture_default_str();
  validate->add_option("--trials", va.trials, "trials per construction-equivalence test")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (theory->parsed()) return run_theory(th);
    if (analyze->parsed()) return run_analyze(an);
    if (experiment->parsed()) return run_experiment_cmd(ex);
    if (validate->parsed()) return run_validate(va);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const tg::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const tg::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kUsage;
  } catch (const tg::SizeGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const tg::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const tg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
