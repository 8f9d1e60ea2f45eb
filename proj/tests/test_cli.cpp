#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "hullmap/cli.hpp"
#include "hullmap/io.hpp"
#include "support.hpp"

using namespace hullmap;

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "hullmap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hullmap_cli_" + name)).string();
}

}  // namespace

TEST_CASE("approx writes a point table of images") {
  const auto o = run({"approx", "--in", testing::data("triangle.csv"), "--eps", "0.1", "--samples", "16"});
  REQUIRE(o.code == 0);
  std::istringstream in(o.out);
  const auto t = io::parse_points_csv(in);
  CHECK(t.dim == 2);
  CHECK(t.size() == 16);
  for (std::size_t r = 0; r < t.size(); ++r) {
    CHECK(t.rows[2 * r] > 0.0);
    CHECK(t.rows[2 * r + 1] > 0.0);
    CHECK(t.rows[2 * r] + t.rows[2 * r + 1] < 1.0);
  }
}

TEST_CASE("approx is identical across kernels") {
  const auto a = run({"approx", "--in", testing::data("cube.csv"), "--samples", "333", "--isa", "scalar"});
  const auto b = run({"approx", "--in", testing::data("cube.csv"), "--samples", "333", "--isa", "auto"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("approx with a cap and rendering") {
  const auto out = tmp("approx.csv");
  const auto o = run({"approx", "--in", testing::data("triangle.csv"), "--cap-center", "0,-1",
                      "--cap-radius", "0.1", "--samples", "50", "--render", "svg", "--out", out});
  REQUIRE(o.code == 0);
  CHECK(io::read_points_csv(out).size() == 50);
  CHECK(io::slurp(tmp("approx.svg")).rfind("<svg", 0) == 0);
  std::filesystem::remove(out);
  std::filesystem::remove(tmp("approx.svg"));
}

TEST_CASE("hull and dual documents") {
  const auto h = run({"hull", "--in", testing::data("cube.csv")});
  REQUIRE(h.code == 0);
  CHECK(io::parse_hull_document(h.out).f_vector() == std::vector<int>{8, 12, 6});

  const auto out = tmp("dual.json");
  const auto d = run({"dual", "--in", testing::data("truncated_tetrahedron.csv"), "--out", out,
                      "--obj", tmp("dual.obj")});
  REQUIRE(d.code == 0);
  CHECK(d.out == "equivalent false, flattened_convex false, transform 8 vertices 6 facets\n");
  std::istringstream obj(io::slurp(tmp("dual.obj")));
  CHECK(io::parse_obj(obj).faces.size() == 12);
  std::filesystem::remove(out);
  std::filesystem::remove(tmp("dual.obj"));
}

TEST_CASE("converge reports are reproducible without timing") {
  const std::vector<std::string> args = {"converge", "--in", testing::data("square.csv"), "--eps-list",
                                         "1e-1,1e-2", "--samples", "400", "--per-facet", "10", "--no-timing"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream in(a.out);
  const auto rows = io::parse_report_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].wall_ms == 0.0);
  CHECK(rows[1].outer_dist < rows[0].outer_dist);
}

TEST_CASE("degenerate sweep") {
  const auto o = run({"converge", "--in", testing::data("collinear.csv"), "--degenerate", "--eps-list", "1e-2",
                      "--samples", "200"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("epsilon,hausdorff,image_to_hull,hull_to_image\n", 0) == 0);
}

TEST_CASE("classify") {
  const auto o = run({"classify", "--in", testing::data("square.csv"), "--direction", "0,-1"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("edge", 0) == 0);
  const auto tie = run({"classify", "--in", testing::data("hexagon.csv"), "--direction", "1,0", "--tol-tie", "0.6"});
  CHECK(tie.code == cli::kAmbiguous);
  CHECK(tie.err.find("AmbiguousTie") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"approx"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"approx", "--in", testing::data("triangle.csv"), "--eps", "0"}).code == cli::kValidation);
  CHECK(run({"approx", "--in", testing::data("triangle.csv"), "--eps", "2"}).code == cli::kValidation);
  CHECK(run({"classify", "--in", testing::data("triangle.csv"), "--direction", "1,0,0"}).code == cli::kValidation);
  CHECK(run({"hull", "--in", testing::data("collinear.csv")}).code == cli::kDegenerate);
  CHECK(run({"converge", "--in", testing::data("triangle.csv"), "--degenerate"}).code == cli::kDegenerate);
  CHECK(run({"hull", "--in", testing::data("missing.csv")}).code == cli::kIo);
  CHECK(run({"approx", "--in", testing::data("triangle.csv"), "--strategy", "fibonacci_3d"}).code ==
        cli::kValidation);
  CHECK(run({"dual", "--in", testing::data("triangle.csv")}).code == cli::kValidation);
  CHECK(cli::exit_code_for(ErrorCode::NumericalOverflow) == cli::kNumeric);
  CHECK(cli::exit_code_for(ErrorCode::TooManyPoints) == cli::kNumeric);
  CHECK(cli::exit_code_for(ErrorCode::Parse) == cli::kIo);
  CHECK(run({"--help"}).code == cli::kOk);
}
