#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cornercut/points.hpp"
#include "cornercut/weights.hpp"

namespace cornercut {

enum class RunMode { unset, certify, points, net };

std::string to_string(RunMode mode);

/// Unvalidated weight schedule as read from a config; `build` validates the
/// pairs against a margin and produces the schedule.
struct ScheduleSpec {
  std::vector<std::pair<std::vector<double>, std::vector<double>>> levels;
  bool constant = true;

  bool empty() const noexcept { return levels.empty(); }
  WeightSchedule build(double margin) const;
};

struct SamplesConfig {
  int per_interval = 64;       // polyline distance sampling
  int grid = 33;               // surface distance sampling (per side)
  int bmsdd_per_interval = 32; // BMSDD estimation sampling
  int resample_per_cell = 16;  // piecewise-linear resampling density
};

struct PointsInitial {
  std::vector<std::vector<double>> points;
  std::vector<double> u;  // empty = default 0,1,2,...
  Topology topology = Topology::open;
  double period = 0.0;  // closed + explicit u only
};

struct NetInitial {
  // Exactly one source: a built-in surface name, a net data file, or an
  // inline crossing-value matrix (values[i][j] = value at (s_i, t_j)).
  std::string builtin;
  std::string file;
  std::vector<std::vector<double>> values;
  // Knots, either explicit or derived from a window (unit-ish spacing).
  std::vector<double> s_knots;
  std::vector<double> t_knots;
};

struct RunConfig {
  RunMode mode = RunMode::unset;

  ScheduleSpec weights;                  // points / certify
  ScheduleSpec s_weights, t_weights;     // net (and directional certify)
  bool directional = false;

  PointsInitial points_initial;
  bool has_points_initial = false;
  NetInitial net_initial;
  bool has_net_initial = false;

  int levels = 0;
  SamplesConfig samples;
  double margin = kDefaultMargin;
  double compat_tol = 1e-9;
  bool force = false;
  bool resample = false;
  std::optional<double> bmsdd_constant;
  /// Diagnostic knob: scales every bound before the pass/fail comparison.
  /// Values below 1 deliberately provoke bound violations.
  double bound_scale = 1.0;
  std::string output_dir;
};

/// Parse a JSON run configuration. Schema violations throw ConfigError with
/// the JSON-pointer-style path of the offending field.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

}  // namespace cornercut
