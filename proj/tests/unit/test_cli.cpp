#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kData = TRIADGRAPH_TEST_DATA;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path workdir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "triadgraph_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Outcome invoke(const std::string& binary, const std::string& args) {
  const fs::path out = workdir() / "stdout.txt";
  const fs::path err = workdir() / "stderr.txt";
  const std::string cmd = "cd '" + workdir().string() + "' && '" + binary + "' " + args + " >'" +
                          out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

Outcome cli(const std::string& args) { return invoke(TRIADGRAPH_CLI, args); }

json json_line(const std::string& out) {
  std::istringstream in(out);
  std::string line;
  json last;
  while (std::getline(in, line)) {
    if (line.rfind("#json ", 0) == 0) last = json::parse(line.substr(6));
  }
  return last;
}

}  // namespace

TEST_CASE("generate") {
  const Outcome r = cli("generate --alpha 1 --delta 0 --steps 5 --seed 3 --out g.txt");
  REQUIRE(r.code == 0);
  const json line = json_line(r.out);
  CHECK(line["vertices"] == 7);
  CHECK(line["num_edges"] == 11);
  CHECK(line["triangles"] == 5);
  const std::string first = slurp(workdir() / "g.txt");
  CHECK(first.rfind("# alpha=1 delta=0 mode=EdgeChoice seed=3 steps=5\n", 0) == 0);

  REQUIRE(cli("generate --alpha 0.3 --delta -0.5 --steps 2000 --seed 8 --out a.txt").code == 0);
  REQUIRE(cli("generate --alpha 0.3 --delta -0.5 --steps 2000 --seed 8 --out b.txt").code == 0);
  CHECK(slurp(workdir() / "a.txt") == slurp(workdir() / "b.txt"));

  const Outcome bad = cli("generate --alpha 2 --steps 5");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("--alpha") != std::string::npos);
  CHECK(cli("generate --alpha 0.5 --delta 1 --mode TwoStage --steps 5").code == 2);
  CHECK(cli("generate --alpha abc").code == 2);
  CHECK(cli("generate --bogus").code == 2);
  CHECK(cli("").code == 2);
}

TEST_CASE("theory") {
  const Outcome ba = cli("theory --alpha 0 --delta 0 --lmax 50 --out theory.csv");
  REQUIRE(ba.code == 0);
  CHECK(ba.out.find("A=0.5") != std::string::npos);
  CHECK(ba.out.find("gamma=3") != std::string::npos);
  CHECK(ba.out.find("regime=Critical") != std::string::npos);
  const std::string csv = slurp(workdir() / "theory.csv");
  CHECK(csv.rfind("# {", 0) == 0);
  CHECK(csv.find("\nl,p_l,A_l\n1,0.6666666666666666,0.5\n") != std::string::npos);

  const Outcome super = cli("theory --alpha 0.1 --delta -0.9");
  CHECK(super.code == 0);
  CHECK(json_line(super.out)["regime"] == "Super");
  CHECK(cli("theory --delta -1").code == 2);
}

TEST_CASE("analyze") {
  const Outcome k3 = cli("analyze --in '" + (kData / "k3.txt").string() + "'");
  REQUIRE(k3.code == 0);
  CHECK(json_line(k3.out)["c2"] == 1.0);

  const Outcome path =
      cli("analyze --joint --in '" + (kData / "path.txt").string() + "' --out analysis");
  REQUIRE(path.code == 0);
  CHECK(json_line(path.out)["c1"] == 0.0);
  CHECK(slurp(workdir() / "analysis" / "joint.csv") == "l,m,count\n1,2,2\n2,1,2\n");
  CHECK(slurp(workdir() / "analysis" / "deghist.csv") == "l,count\n1,2\n2,1\n");

  const Outcome bad = cli("analyze --in '" + (kData / "malformed.txt").string() + "'");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 3") != std::string::npos);

  CHECK(cli("analyze --in nothing_here.txt").code == 2);
}

TEST_CASE("generate then analyze agree") {
  const Outcome gen = cli("generate --alpha 0.5 --delta 1 --steps 3000 --seed 4 --out ga.txt");
  const Outcome an = cli("analyze --in ga.txt");
  REQUIRE(gen.code == 0);
  REQUIRE(an.code == 0);
  json a = json_line(gen.out);
  json b = json_line(an.out);
  for (const char* key : {"t", "num_edges", "triangles", "triples", "c1", "c2"}) {
    CHECK(a[key] == b[key]);
  }
}

TEST_CASE("experiment") {
  const Outcome ba = cli("experiment --config '" + (kData / "ba.json").string() +
                         "' --output_dir ba_out --workers 2");
  CHECK(ba.code == 0);
  const json verdict = json::parse(slurp(workdir() / "ba_out" / "verdict.json"));
  CHECK(verdict["verdict"] == "pass");
  CHECK(verdict["config"]["workers"] == 2);
  CHECK(fs::exists(workdir() / "ba_out" / "stats.csv"));
  CHECK(fs::exists(workdir() / "ba_out" / "deghist_100000.csv"));

  const Outcome zero = cli("experiment --config '" + (kData / "zero_replicas.json").string() + "'");
  CHECK(zero.code == 2);
  const Outcome unknown =
      cli("experiment --config '" + (kData / "unknown_field.json").string() + "'");
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("colour") != std::string::npos);

  // Flag overrides config: replicas=0 in the file, 1 on the command line.
  const Outcome fixed = cli("experiment --config '" + (kData / "zero_replicas.json").string() +
                            "' --replicas 1 --output_dir zr_out");
  CHECK(fixed.code != 2);
}

TEST_CASE("workers default comes from the environment") {
  const Outcome r = cli("experiment --config '" + (kData / "zero_replicas.json").string() +
                        "' --replicas 2 --output_dir env_out");
  REQUIRE(r.code != 2);
  ::setenv("TRIADGRAPH_WORKERS", "3", 1);
  const Outcome e = cli("experiment --config '" + (kData / "zero_replicas.json").string() +
                        "' --replicas 2 --output_dir env_out");
  ::unsetenv("TRIADGRAPH_WORKERS");
  REQUIRE(e.code != 2);
  const json verdict = json::parse(slurp(workdir() / "env_out" / "verdict.json"));
  CHECK(verdict["config"]["workers"] == 3);
}

TEST_CASE("validate") {
  const Outcome ok = cli("validate --t 60 --seeds 10 --draws 100000 --trials 20000");
  CHECK(ok.code == 0);
  CHECK(json_line(ok.out)["passed"] == true);

  const Outcome faulty =
      invoke(TRIADGRAPH_FAULTY_CLI, "validate --t 20 --seeds 3 --draws 1000 --trials 1000");
  CHECK(faulty.code == 1);
  CHECK(faulty.out.find("FAIL") != std::string::npos);

  CHECK(cli("validate --t 1000000").code == 2);
  CHECK(cli("validate --t 10^6").code == 2);
}
