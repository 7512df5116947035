#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cornercut/config.hpp"
#include "cornercut/runner.hpp"

using namespace cornercut;

namespace {

namespace fs = std::filesystem;

const char* kSquareConfig = R"({
  "mode": "points",
  "weights": { "alpha": [0.25], "beta": [0.75] },
  "initial": { "points": [[0,0],[1,0],[1,1],[0,1]], "topology": "closed" },
  "levels": 5
})";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("cornercut_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing and defaults") {
  const RunConfig cfg = parse_config(kSquareConfig);
  CHECK(cfg.mode == RunMode::points);
  CHECK(cfg.levels == 5);
  CHECK(cfg.has_points_initial);
  CHECK(cfg.points_initial.topology == Topology::closed);
  CHECK(cfg.points_initial.points.size() == 4);
  CHECK(cfg.margin == 1e-12);
  CHECK(cfg.samples.per_interval == 64);
  CHECK(!cfg.resample);
  CHECK(cfg.bound_scale == 1.0);
}

TEST_CASE("config schema errors carry field paths") {
  try {
    parse_config(R"({"mode": "points", "weights": {"alpha": [0.25]}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.path() == "/weights/beta");
  }

  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"weights": {"alpha": [0.2], "beta": "x"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"mode": "plot", "weights": {"alpha": [0.2], "beta": [0.7]}})"),
                  ConfigError);
  try {
    parse_config(R"({"weights": {"alpha": [0.2], "beta": [0.7]},
                     "initial": {"points": [[0,0],[1,1]], "topology": "wavy"}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.path() == "/initial/topology");
  }
  CHECK_THROWS_AS(parse_config(R"({"weights": {"alpha": [0.2], "beta": [0.7]},
                                   "bound_scale": 0})"),
                  ConfigError);
}

TEST_CASE("net config with builtin and window") {
  const RunConfig cfg = parse_config(R"({
    "mode": "net",
    "weights": { "alpha": [0.25], "beta": [0.75] },
    "initial": { "builtin": "sinycosx", "window": { "s": [0, 4], "t": [0, 4] } },
    "levels": 2
  })");
  CHECK(cfg.has_net_initial);
  CHECK(cfg.net_initial.builtin == "sinycosx");
  REQUIRE(cfg.net_initial.s_knots.size() == 5);
  CHECK(cfg.net_initial.s_knots[3] == doctest::Approx(3.0));

  const NetOfFunctions net = build_initial_net(cfg);
  CHECK(net.grid().cells_s() == 4);
  CHECK(net.crossing(1, 2) == doctest::Approx(std::sin(2.0) * std::cos(1.0)));

  RunConfig unknown = cfg;
  unknown.net_initial.builtin = "nope";
  CHECK_THROWS_AS(build_initial_net(unknown), Error);
}

TEST_CASE("directional schedules") {
  const RunConfig cfg = parse_config(R"({
    "mode": "net",
    "weights": {
      "s": { "alpha": [0.25], "beta": [0.75] },
      "t": { "levels": [ { "alpha": [0.2], "beta": [0.7] }, { "alpha": [0.25], "beta": [0.75] } ] }
    },
    "initial": { "builtin": "product", "window": { "s": [0, 2], "t": [0, 2] } },
    "levels": 2
  })");
  CHECK(cfg.directional);
  CHECK(cfg.s_weights.constant);
  CHECK(!cfg.t_weights.constant);
  CHECK(cfg.t_weights.levels.size() == 2);
  const Certificate cert =
      certify(cfg.s_weights.build(cfg.margin), cfg.t_weights.build(cfg.margin));
  CHECK(cert.mu_per_level.size() == 2);
}

TEST_CASE("net data files round-trip") {
  TempDir dir("netfile");
  const fs::path file = dir.path / "net.json";
  {
    std::ofstream out(file);
    out << R"({"s_knots": [0, 1, 2], "t_knots": [0, 1], "values": [[1, 2], [3, 4], [5, 6]]})";
  }
  const NetOfFunctions net = load_net_file(file.string());
  CHECK(net.grid().cells_s() == 2);
  CHECK(net.crossing(2, 1) == 6.0);
  CHECK_THROWS_AS(load_net_file((dir.path / "missing.json").string()), ConfigError);
}

TEST_CASE("runner exit codes") {
  RunConfig pass = parse_config(kSquareConfig);
  const RunResult ok = run(pass);
  CHECK(ok.exit_code == 0);
  CHECK(ok.report.all_pass());
  CHECK(ok.report.certificate.mu_sup == 0.5);

  // shrinking the bounds provokes reported violations
  RunConfig violated = pass;
  violated.bound_scale = 1e-9;
  const RunResult bad = run(violated);
  CHECK(bad.exit_code == 1);
  CHECK(!bad.report.all_pass());

  // mu = 1 - 0.2 + 0.45 = 1.25: not points-convergent
  RunConfig uncertified = parse_config(R"({
    "mode": "points",
    "weights": { "alpha": [0.1, 0.45], "beta": [0.2, 0.9] },
    "initial": { "points": [[0,0],[1,0],[1,1],[0,1]], "topology": "closed" },
    "levels": 3
  })");
  CHECK_THROWS_AS(run(uncertified), NotCertifiedError);
  uncertified.force = true;
  const RunResult forced = run(uncertified);
  CHECK(forced.exit_code == 0);
  CHECK(!forced.report.bounds_checked);
  CHECK(forced.report.tail_bounds.empty());

  RunConfig unset = pass;
  unset.mode = RunMode::unset;
  CHECK_THROWS_AS(run(unset), ConfigError);
}

TEST_CASE("certify mode reports and writes no geometry") {
  TempDir dir("certify");
  RunConfig cfg = parse_config(R"({
    "mode": "certify",
    "weights": { "alpha": [0.05], "beta": [0.95] }
  })");
  cfg.output_dir = (dir.path / "out").string();
  const RunResult result = run(cfg);
  CHECK(result.exit_code == 0);
  CHECK(result.report.certificate.points_convergent);
  CHECK(!result.report.certificate.nets_convergent);
  CHECK(result.written_files.size() == 1);  // report.json only
  CHECK(fs::exists(dir.path / "out" / "report.json"));
  CHECK(!fs::exists(dir.path / "out" / "points_final.csv"));
}

TEST_CASE("geometry exports are deterministic") {
  TempDir dir("determinism");
  RunConfig cfg = parse_config(kSquareConfig);
  cfg.levels = 4;

  cfg.output_dir = (dir.path / "a").string();
  const RunResult first = run(cfg);
  cfg.output_dir = (dir.path / "b").string();
  const RunResult second = run(cfg);
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);

  for (const char* name :
       {"points_final.csv", "points_level_0.csv", "points_level_4.csv"}) {
    const std::string a = read_file(dir.path / "a" / name);
    const std::string b = read_file(dir.path / "b" / name);
    CHECK(!a.empty());
    CHECK(a == b);
  }
  // report values identical apart from the runtime stamp
  CHECK(first.report.mesh_sizes == second.report.mesh_sizes);
  REQUIRE(first.report.distances.size() == second.report.distances.size());
  for (std::size_t i = 0; i < first.report.distances.size(); ++i) {
    CHECK(first.report.distances[i].measured == second.report.distances[i].measured);
    CHECK(first.report.distances[i].bound == second.report.distances[i].bound);
  }
}

TEST_CASE("net mode run end to end") {
  TempDir dir("netrun");
  RunConfig cfg = parse_config(R"({
    "mode": "net",
    "weights": { "alpha": [0.25], "beta": [0.75] },
    "initial": { "builtin": "sincos", "window": { "s": [0, 4], "t": [0, 4] } },
    "levels": 3,
    "samples": { "grid": 17 }
  })");
  cfg.output_dir = (dir.path / "out").string();
  const RunResult result = run(cfg);
  CHECK(result.exit_code == 0);
  CHECK(result.report.constant_kind == "bmsdd");
  CHECK(result.report.constant_source == "estimated");
  CHECK(result.report.distances.size() == 3);
  for (const DistanceRow& row : result.report.distances) {
    CHECK(row.pass);
  }
  CHECK(fs::exists(dir.path / "out" / "surface_first.csv"));
  CHECK(fs::exists(dir.path / "out" / "surface_last.csv"));

  // a supplied constant is reported as exact
  RunConfig exact = cfg;
  exact.bmsdd_constant = 1.0;
  exact.output_dir.clear();
  const RunResult exact_result = run(exact);
  CHECK(exact_result.report.constant_source == "exact");
  CHECK(exact_result.report.constant_value == 1.0);
}

TEST_CASE("forced uncertified net run exports geometry without bounds") {
  TempDir dir("forcednet");
  RunConfig cfg = parse_config(R"({
    "mode": "net",
    "weights": { "alpha": [0.05], "beta": [0.95] },
    "initial": { "builtin": "product", "window": { "s": [0, 3], "t": [0, 3] } },
    "levels": 2,
    "force": true,
    "samples": { "grid": 9 }
  })");
  cfg.output_dir = (dir.path / "out").string();
  const RunResult result = run(cfg);
  CHECK(result.exit_code == 0);
  CHECK(!result.report.bounds_checked);
  CHECK(result.report.tail_bounds.empty());
  for (const DistanceRow& row : result.report.distances) {
    CHECK(!row.checked);
  }
  CHECK(fs::exists(dir.path / "out" / "surface_first.csv"));
  CHECK(fs::exists(dir.path / "out" / "surface_last.csv"));
}
