// End-to-end tests of the command-line tool. The binary path comes from the
// QUADGRID_CLI environment variable (set by ctest).
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "quadgrid/grid.hpp"
#include "test_support.hpp"

using namespace quadgrid;
using namespace testsupport;

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
  const char* env = std::getenv("QUADGRID_CLI");
  REQUIRE_MESSAGE(env != nullptr, "QUADGRID_CLI must point at the CLI binary");
  return env;
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "quadgrid_cli_tests";
  fs::create_directories(dir);
  return dir;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "last_output.txt";
  const std::string cmd = cli_path() + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string path_of(const char* name) { return (work_dir() / name).string(); }

} // namespace

TEST_CASE("cli tfi generates a grid from a square contour") {
  write_contour_file(path_of("square.contour"), square_contour());
  const RunResult r =
      run_cli("tfi " + path_of("square.contour") + " 5 5 " + path_of("square.grid"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("convexity: pass") != std::string::npos);

  const StructuredGrid g = read_grid(path_of("square.grid"));
  CHECK(g.cols() == 5);
  CHECK(g.rows() == 5);
  CHECK(g.node_count() == 25);
}

TEST_CASE("cli tfi rejects an open contour with exit 1") {
  Contour open = square_contour();
  open.sides[1][1] = Point(2, 2);
  write_contour_file(path_of("open.contour"), open);
  const RunResult r =
      run_cli("tfi " + path_of("open.contour") + " 5 5 " + path_of("open.grid"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("not closed") != std::string::npos);
}

TEST_CASE("cli tfi returns 2 on folded output but still writes the grid") {
  Contour overhang;
  overhang.sides[0] = {{0, 0}, {0.7, 0}, {0.4, 0.35}, {1, 0.45}};
  overhang.sides[1] = {{1, 0.45}, {1, 1}};
  overhang.sides[2] = {{1, 1}, {0, 1}};
  overhang.sides[3] = {{0, 1}, {0, 0}};
  write_contour_file(path_of("overhang.contour"), overhang);
  const RunResult r =
      run_cli("tfi " + path_of("overhang.contour") + " 21 11 " + path_of("overhang.grid"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("FAIL") != std::string::npos);
  CHECK(fs::exists(path_of("overhang.grid")));
  CHECK(read_grid(path_of("overhang.grid")).cols() == 21);
}

TEST_CASE("cli smooth improves a perturbed grid") {
  write_contour_file(path_of("square.contour"), square_contour());
  REQUIRE(run_cli("tfi " + path_of("square.contour") + " 9 9 " + path_of("noisy.grid") +
                  " --perturb 0.2 --seed 11")
              .exit_code == 0);

  const RunResult r = run_cli("smooth " + path_of("noisy.grid") + " " +
                              path_of("smoothed.grid") + " --functional fr --sigma 0.5");
  CHECK(r.exit_code == 0);
  REQUIRE(r.output.find("smooth iterations=") != std::string::npos);

  // machine-readable line: value1 < value0 and distortion did not get worse
  double value0 = 0, value1 = 0, dist0 = 0, dist1 = 0;
  {
    const std::string line = r.output.substr(r.output.find("smooth iterations="));
    const auto grab = [&](const char* key) {
      const size_t pos = line.find(key);
      REQUIRE(pos != std::string::npos);
      return std::stod(line.substr(pos + std::string(key).size()));
    };
    value0 = grab("value0=");
    value1 = grab("value1=");
    dist0 = grab("distortion0=");
    dist1 = grab("distortion1=");
  }
  CHECK(value1 < value0);
  CHECK(dist1 <= dist0 + 1e-12);
  CHECK(fs::exists(path_of("smoothed.grid")));
}

TEST_CASE("cli smooth validates configuration with exit 1") {
  const RunResult r = run_cli("smooth " + path_of("noisy.grid") + " " +
                              path_of("x.grid") + " --sigma 1.5");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("sigma") != std::string::npos);
}

TEST_CASE("cli smooth on an already optimal grid exits 0 quickly") {
  write_grid(unit_square_lattice(6, 6), path_of("uniform.grid"));
  const RunResult r = run_cli("smooth " + path_of("uniform.grid") + " " +
                              path_of("uniform_out.grid") + " --functional fr --sigma 1.0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("iterations      0") != std::string::npos);
}

TEST_CASE("cli smooth rejects folded input with exit 2") {
  StructuredGrid folded = unit_square_lattice(5, 5);
  folded.at(2, 2) = Point(0.9, 0.9);
  write_grid(folded, path_of("folded.grid"));
  const RunResult r =
      run_cli("smooth " + path_of("folded.grid") + " " + path_of("folded_out.grid"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("cli smooth --barrier-first rescues a nearly-collapsed grid") {
  // unfolded but not eps-convex at the default eps: one node sits a hair
  // away from a cell edge
  StructuredGrid tight = unit_square_lattice(5, 5);
  tight.at(2, 2) = Point(0.7499, 0.5);
  REQUIRE(is_eps_convex(tight, 0.0).pass());
  REQUIRE(!is_eps_convex(tight, 1e-3).pass());
  write_grid(tight, path_of("tight.grid"));

  const RunResult plain =
      run_cli("smooth " + path_of("tight.grid") + " " + path_of("tight_out.grid"));
  CHECK(plain.exit_code == 2);
  CHECK(plain.output.find("sigma = 0") != std::string::npos);

  const RunResult rescued = run_cli("smooth " + path_of("tight.grid") + " " +
                                    path_of("tight_out.grid") + " --barrier-first");
  CHECK(rescued.exit_code == 0);
  CHECK(rescued.output.find("barrier-first") != std::string::npos);
  CHECK(is_eps_convex(read_grid(path_of("tight_out.grid")), 1e-3).pass());
}

TEST_CASE("cli quality gate") {
  write_grid(unit_square_lattice(6, 6), path_of("uniform.grid"));
  const RunResult ok = run_cli("quality " + path_of("uniform.grid") +
                               " --measure rectangles2015 --threshold 0.95");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("quality measure=rectangles2015") != std::string::npos);
  CHECK(ok.output.find("mean=1") != std::string::npos);

  StructuredGrid sheared = unit_square_lattice(6, 6);
  for (int j = 1; j < 5; ++j) {
    for (int i = 1; i < 5; ++i) {
      sheared.at(i, j) = sheared.at(i, j) + Point{0.06 * j, 0.0};
    }
  }
  write_grid(sheared, path_of("sheared.grid"));
  const RunResult gate = run_cli("quality " + path_of("sheared.grid") +
                                 " --measure rectangles2015 --threshold 0.95");
  CHECK(gate.exit_code == 3);
  CHECK(gate.output.find("below") != std::string::npos);

  const RunResult typo = run_cli("quality " + path_of("uniform.grid") +
                                 " --measure rectangels2015");
  CHECK(typo.exit_code == 1);
  CHECK(typo.output.find("valid names") != std::string::npos);
}

TEST_CASE("cli colormap writes an SVG with one polygon per cell") {
  write_grid(unit_square_lattice(6, 6), path_of("uniform.grid"));
  const RunResult r = run_cli("colormap " + path_of("uniform.grid") + " " +
                              path_of("map.svg") + " --measure rectangles2015");
  CHECK(r.exit_code == 0);
  std::ifstream in(path_of("map.svg"));
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string svg = ss.str();
  int polygons = 0;
  size_t pos = 0;
  while ((pos = svg.find("<polygon", pos)) != std::string::npos) {
    ++polygons;
    pos += 8;
  }
  CHECK(polygons == 25);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("cli colormap reports measure failures on folds with exit 2") {
  StructuredGrid folded = unit_square_lattice(5, 5);
  folded.at(2, 2) = Point(0.8, 0.8);
  write_grid(folded, path_of("folded.grid"));
  const RunResult r = run_cli("colormap " + path_of("folded.grid") + " " +
                              path_of("folded.svg") + " --measure minrect2015");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("cell") != std::string::npos);
}

TEST_CASE("cli config file provides defaults, flags win") {
  // mild shear: every quality in (0.2, 0.95), so the two thresholds disagree
  StructuredGrid sheared = unit_square_lattice(6, 6);
  for (int j = 1; j < 5; ++j) {
    for (int i = 1; i < 5; ++i) {
      sheared.at(i, j) = sheared.at(i, j) + Point{0.03 * j, 0.0};
    }
  }
  write_grid(sheared, path_of("sheared_mild.grid"));
  {
    std::ofstream cfg(path_of("quality.cfg"));
    cfg << "[quality]\nthreshold=0.2\n";
  }
  // config threshold 0.2: nothing falls below, gate passes
  const RunResult from_file = run_cli("quality " + path_of("sheared_mild.grid") +
                                      " --config " + path_of("quality.cfg"));
  CHECK(from_file.exit_code == 0);
  CHECK(from_file.output.find("threshold 0.2") != std::string::npos);

  // explicit flag overrides the file and trips the gate again
  const RunResult flag_wins = run_cli("quality " + path_of("sheared_mild.grid") +
                                      " --config " + path_of("quality.cfg") +
                                      " --threshold 0.95");
  CHECK(flag_wins.exit_code == 3);
}

TEST_CASE("cli tfi --perturb is reproducible via --seed") {
  write_contour_file(path_of("square.contour"), square_contour());
  REQUIRE(run_cli("tfi " + path_of("square.contour") + " 7 7 " + path_of("p1.grid") +
                  " --perturb 0.15 --seed 42")
              .exit_code == 0);
  REQUIRE(run_cli("tfi " + path_of("square.contour") + " 7 7 " + path_of("p2.grid") +
                  " --perturb 0.15 --seed 42")
              .exit_code == 0);
  std::ifstream a(path_of("p1.grid")), b(path_of("p2.grid"));
  std::ostringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  REQUIRE(run_cli("tfi " + path_of("square.contour") + " 7 7 " + path_of("p3.grid") +
                  " --perturb 0.15 --seed 43")
              .exit_code == 0);
  std::ifstream c(path_of("p3.grid"));
  std::ostringstream sc;
  sc << c.rdbuf();
  CHECK(sa.str() != sc.str());
}
