#include <doctest.h>

#include <algorithm>
#include <string>

#include "triadgraph/errors.hpp"
#include "triadgraph/graph.hpp"
#include "triadgraph/graph_io.hpp"
#include "triadgraph/metrics.hpp"

using namespace triadgraph;

namespace {

std::size_t format_error_line(std::string_view text) {
  try {
    import_graph(text);
  } catch (const FormatError& e) {
    return e.line();
  }
  FAIL("expected a FormatError");
  return 0;
}

}  // namespace

TEST_CASE("export format") {
  const GrowthGraph g = run(ModelParams{1.0, 0.0, Mode::EdgeChoice, 3}, 2);
  const std::string text = export_graph(g);
  CHECK(text.rfind("# alpha=1 delta=0 mode=EdgeChoice seed=3 steps=2\n1 2\n", 0) == 0);
  // 1 + 2 * 2 edges after the header.
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 5);
}

TEST_CASE("export/import round trip") {
  RandomStream rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const ModelParams p{rng.uniform01(), -0.9 + 4.0 * rng.uniform01(), Mode::EdgeChoice, rng()};
    const GrowthGraph g = run(p, 1 + rng.below(3'000));
    const std::string text = export_graph(g);
    const StaticGraph back = import_graph(text);

    CHECK(back.header.alpha == p.alpha);
    CHECK(back.header.delta == p.delta);
    CHECK(back.header.mode == p.mode);
    CHECK(back.header.seed == p.seed);
    CHECK(back.steps == g.num_steps());
    CHECK(std::equal(back.endpoints.begin(), back.endpoints.end(), g.endpoints().begin(),
                     g.endpoints().end()));
    CHECK(std::equal(back.degrees.begin(), back.degrees.end(), g.degrees().begin(),
                     g.degrees().end()));
    CHECK(std::equal(back.tri_counts.begin(), back.tri_counts.end(), g.tri_counts().begin(),
                     g.tri_counts().end()));
    CHECK(back.triangles == g.triangle_steps());
    CHECK(snapshot(back.view(), true) == snapshot(g.view(), true));
  }
}

TEST_CASE("hand-written files without a header") {
  const StaticGraph k3 = import_graph("1 2\n1 3\n2 3\n");
  CHECK(k3.triangles == 1);
  CHECK(c2_global(k3.view()) == 1.0);
  CHECK_FALSE(k3.header.alpha.has_value());

  const StaticGraph path = import_graph("\n2 1\r\n1 3\n\n");
  CHECK(c1_average_local(path.view()) == 0.0);
  CHECK(path.steps == 1);
}

TEST_CASE("malformed input is reported with its line") {
  CHECK_THROWS_AS(import_graph("# alpha=0.5\n"), FormatError);
  CHECK(format_error_line("") == 0);
  CHECK(format_error_line("1 2\n2 1\n") == 2);                      // duplicate edge
  CHECK(format_error_line("1 2\n1 3\nx y\n") == 3);                 // not numbers
  CHECK(format_error_line("1 2 3\n") == 1);                         // three fields
  CHECK(format_error_line("1 2\n2 2\n") == 2);                      // self-loop
  CHECK(format_error_line("1 2\n0 1\n") == 2);                      // ids are 1-based
  CHECK(format_error_line("# alpha=0.5 colour=red\n1 2\n") == 1);   // unknown key
  CHECK(format_error_line("# mode=Sideways\n1 2\n") == 1);          // bad value
  CHECK(format_error_line("# alpha\n1 2\n") == 1);                  // not key=value
  CHECK(format_error_line("1 2\n1 4\n") == 0);                      // id 3 missing
  CHECK(format_error_line("# steps=5\n1 2\n1 3\n") == 0);           // steps mismatch
}

TEST_CASE("file errors name the path") {
  CHECK_THROWS_AS(read_graph_file("/nonexistent/graph.txt"), IoError);
  const GrowthGraph g(ModelParams{});
  CHECK_THROWS_AS(write_graph_file("/nonexistent/dir/graph.txt", g), IoError);
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.9) == "-0.9");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
