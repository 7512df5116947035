#include "cornercut/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cornercut {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path, what);
}

const json* find(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> as_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_double(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

std::vector<std::vector<double>> as_matrix(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of number arrays");
  std::vector<std::vector<double>> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number_array(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> parse_pair(const json& j,
                                                               const std::string& path) {
  require_object(j, path);
  const json* alpha = find(j, "alpha");
  const json* beta = find(j, "beta");
  if (!alpha) fail(path + "/alpha", "required array missing");
  if (!beta) fail(path + "/beta", "required array missing");
  return {as_number_array(*alpha, path + "/alpha"),
          as_number_array(*beta, path + "/beta")};
}

ScheduleSpec parse_schedule(const json& j, const std::string& path) {
  require_object(j, path);
  ScheduleSpec spec;
  if (const json* levels = find(j, "levels")) {
    if (!levels->is_array() || levels->empty()) {
      fail(path + "/levels", "expected a nonempty array of {alpha, beta} objects");
    }
    spec.constant = false;
    for (std::size_t k = 0; k < levels->size(); ++k) {
      spec.levels.push_back(parse_pair((*levels)[k], path + "/levels/" + std::to_string(k)));
    }
  } else {
    spec.constant = true;
    spec.levels.push_back(parse_pair(j, path));
  }
  return spec;
}

std::vector<double> knots_from_window(const json& j, const std::string& path,
                                      const char* range_key, const char* cells_key) {
  const json* range = find(j, range_key);
  if (!range) fail(path + "/" + range_key, "required [lo, hi] range missing");
  const auto lohi = as_number_array(*range, path + "/" + range_key);
  if (lohi.size() != 2 || !(lohi[0] < lohi[1])) {
    fail(path + "/" + range_key, "expected [lo, hi] with lo < hi");
  }
  long cells = std::lround(lohi[1] - lohi[0]);
  if (const json* c = find(j, cells_key)) cells = as_int(*c, path + "/" + cells_key);
  if (cells < 1) fail(path + "/" + cells_key, "need at least one cell");
  std::vector<double> knots(static_cast<std::size_t>(cells) + 1);
  for (long i = 0; i <= cells; ++i) {
    knots[static_cast<std::size_t>(i)] =
        lohi[0] + (lohi[1] - lohi[0]) * static_cast<double>(i) / static_cast<double>(cells);
  }
  return knots;
}

void parse_initial(const json& j, RunConfig& cfg) {
  const std::string path = "/initial";
  require_object(j, path);
  if (const json* points = find(j, "points")) {
    cfg.has_points_initial = true;
    cfg.points_initial.points = as_matrix(*points, path + "/points");
    if (const json* u = find(j, "u")) {
      cfg.points_initial.u = as_number_array(*u, path + "/u");
    }
    const json* topology = find(j, "topology");
    if (!topology) fail(path + "/topology", "required 'open' or 'closed' missing");
    const std::string topo = as_string(*topology, path + "/topology");
    if (topo == "open") {
      cfg.points_initial.topology = Topology::open;
    } else if (topo == "closed") {
      cfg.points_initial.topology = Topology::closed;
    } else {
      fail(path + "/topology", "expected 'open' or 'closed', got '" + topo + "'");
    }
    if (const json* period = find(j, "period")) {
      cfg.points_initial.period = as_double(*period, path + "/period");
    }
    return;
  }

  int sources = 0;
  if (const json* builtin = find(j, "builtin")) {
    cfg.net_initial.builtin = as_string(*builtin, path + "/builtin");
    ++sources;
  }
  if (const json* file = find(j, "file")) {
    cfg.net_initial.file = as_string(*file, path + "/file");
    ++sources;
  }
  if (const json* values = find(j, "values")) {
    cfg.net_initial.values = as_matrix(*values, path + "/values");
    ++sources;
  }
  if (sources != 1) {
    fail(path, "need exactly one of 'points', 'builtin', 'file', 'values'");
  }
  cfg.has_net_initial = true;

  const json* s_knots = find(j, "s_knots");
  const json* t_knots = find(j, "t_knots");
  const json* window = find(j, "window");
  if (window && (s_knots || t_knots)) {
    fail(path, "give either explicit knots or a window, not both");
  }
  if (s_knots || t_knots) {
    if (!s_knots || !t_knots) fail(path, "s_knots and t_knots come together");
    cfg.net_initial.s_knots = as_number_array(*s_knots, path + "/s_knots");
    cfg.net_initial.t_knots = as_number_array(*t_knots, path + "/t_knots");
  } else if (window) {
    require_object(*window, path + "/window");
    cfg.net_initial.s_knots = knots_from_window(*window, path + "/window", "s", "cells_s");
    cfg.net_initial.t_knots = knots_from_window(*window, path + "/window", "t", "cells_t");
  } else if (cfg.net_initial.file.empty()) {
    fail(path, "net initial data needs 's_knots'/'t_knots' or a 'window'");
  }
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::certify: return "certify";
    case RunMode::points: return "points";
    case RunMode::net: return "net";
    case RunMode::unset: break;
  }
  return "unset";
}

WeightSchedule ScheduleSpec::build(double margin) const {
  if (levels.empty()) throw EmptyScheduleError("weight schedule has no levels");
  std::vector<WeightPair> pairs;
  pairs.reserve(levels.size());
  for (const auto& [alpha, beta] : levels) {
    pairs.emplace_back(alpha, beta, margin);
  }
  if (constant && pairs.size() == 1) return WeightSchedule(std::move(pairs.front()));
  return WeightSchedule(std::move(pairs));
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("invalid JSON: ") + e.what());
  }
  require_object(j, "/");

  RunConfig cfg;
  if (const json* mode = find(j, "mode")) {
    const std::string m = as_string(*mode, "/mode");
    if (m == "certify") {
      cfg.mode = RunMode::certify;
    } else if (m == "points") {
      cfg.mode = RunMode::points;
    } else if (m == "net") {
      cfg.mode = RunMode::net;
    } else {
      fail("/mode", "expected 'certify', 'points' or 'net', got '" + m + "'");
    }
  }

  const json* weights = find(j, "weights");
  if (!weights) fail("/weights", "required object missing");
  require_object(*weights, "/weights");
  const json* s_dir = find(*weights, "s");
  const json* t_dir = find(*weights, "t");
  if (s_dir || t_dir) {
    if (!s_dir) fail("/weights/s", "required schedule missing");
    if (!t_dir) fail("/weights/t", "required schedule missing");
    cfg.directional = true;
    cfg.s_weights = parse_schedule(*s_dir, "/weights/s");
    cfg.t_weights = parse_schedule(*t_dir, "/weights/t");
  } else {
    cfg.weights = parse_schedule(*weights, "/weights");
  }

  if (const json* initial = find(j, "initial")) {
    parse_initial(*initial, cfg);
  }

  if (const json* levels = find(j, "levels")) {
    cfg.levels = as_int(*levels, "/levels");
    if (cfg.levels < 0) fail("/levels", "must be nonnegative");
  }
  if (const json* samples = find(j, "samples")) {
    require_object(*samples, "/samples");
    if (const json* v = find(*samples, "per_interval")) {
      cfg.samples.per_interval = as_int(*v, "/samples/per_interval");
    }
    if (const json* v = find(*samples, "grid")) {
      cfg.samples.grid = as_int(*v, "/samples/grid");
    }
    if (const json* v = find(*samples, "bmsdd_per_interval")) {
      cfg.samples.bmsdd_per_interval = as_int(*v, "/samples/bmsdd_per_interval");
    }
    if (const json* v = find(*samples, "resample_per_cell")) {
      cfg.samples.resample_per_cell = as_int(*v, "/samples/resample_per_cell");
    }
    if (cfg.samples.per_interval < 2 || cfg.samples.grid < 2 ||
        cfg.samples.bmsdd_per_interval < 2 || cfg.samples.resample_per_cell < 2) {
      fail("/samples", "sampling densities must be at least 2");
    }
  }
  if (const json* margin = find(j, "margin")) {
    cfg.margin = as_double(*margin, "/margin");
    if (cfg.margin < 0.0) fail("/margin", "must be nonnegative");
  }
  if (const json* tol = find(j, "compat_tol")) {
    cfg.compat_tol = as_double(*tol, "/compat_tol");
    if (cfg.compat_tol < 0.0) fail("/compat_tol", "must be nonnegative");
  }
  if (const json* force = find(j, "force")) cfg.force = as_bool(*force, "/force");
  if (const json* resample = find(j, "resample")) {
    cfg.resample = as_bool(*resample, "/resample");
  }
  if (const json* c = find(j, "bmsdd_constant")) {
    cfg.bmsdd_constant = as_double(*c, "/bmsdd_constant");
    if (*cfg.bmsdd_constant < 0.0) fail("/bmsdd_constant", "must be nonnegative");
  }
  if (const json* scale = find(j, "bound_scale")) {
    cfg.bound_scale = as_double(*scale, "/bound_scale");
    if (!(cfg.bound_scale > 0.0)) fail("/bound_scale", "must be positive");
  }
  if (const json* out = find(j, "output_dir")) {
    cfg.output_dir = as_string(*out, "/output_dir");
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace cornercut
