#include "cornercut/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cornercut/registry.hpp"
#include "cornercut/version.hpp"

namespace cornercut {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& text,
                     std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  written.push_back(path.string());
}

std::string polyline_csv(const PolylineLevel& level, bool with_level_column) {
  std::ostringstream out;
  out << "# columns: " << (with_level_column ? "level,u" : "u");
  for (std::size_t c = 0; c < level.dim(); ++c) out << ",x" << c + 1;
  out << "\n";
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (with_level_column) out << level.level << ",";
    out << format_number(level.u[i]);
    for (double x : level.points[i]) out << "," << format_number(x);
    out << "\n";
  }
  return out.str();
}

std::string surface_csv(const PiecewiseCoonsSurface& surface, const Rect& window,
                        int samples_per_side) {
  std::ostringstream out;
  out << "# columns: s,t,value\n";
  for (int is = 0; is < samples_per_side; ++is) {
    const double s =
        window.a + window.width() * static_cast<double>(is) / (samples_per_side - 1);
    for (int it = 0; it < samples_per_side; ++it) {
      const double t =
          window.c + window.height() * static_cast<double>(it) / (samples_per_side - 1);
      out << format_number(s) << "," << format_number(t) << ","
          << format_number(surface(s, t)) << "\n";
    }
  }
  return out.str();
}

bool bound_holds(double measured, double bound) {
  return measured <= bound + 1e-12 * std::max(1.0, std::abs(bound));
}

WeightSchedule single_schedule(const RunConfig& cfg) {
  if (cfg.directional) {
    throw ConfigError("/weights", to_string(cfg.mode) +
                                      " mode takes a single schedule, not s/t pairs");
  }
  return cfg.weights.build(cfg.margin);
}

void note_out_of_scope_conditions(Report& report) {
  report.notes.push_back(
      "relaxed (summability-type) convergence conditions are reported informally "
      "only; certification uses the strict contraction thresholds");
}

RunResult run_certify(const RunConfig& cfg) {
  RunResult result;
  result.report.mode = "certify";
  if (cfg.directional) {
    result.report.certificate =
        certify(cfg.s_weights.build(cfg.margin), cfg.t_weights.build(cfg.margin));
  } else {
    result.report.certificate = certify(cfg.weights.build(cfg.margin));
  }
  note_out_of_scope_conditions(result.report);
  result.exit_code = 0;
  return result;
}

RunResult run_points_mode(const RunConfig& cfg) {
  RunResult result;
  Report& report = result.report;
  report.mode = "points";

  const WeightSchedule schedule = single_schedule(cfg);
  const PolylineLevel initial = build_initial_polyline(cfg);
  const PointsRun run = run_points(initial, schedule, cfg.levels, cfg.force);

  report.certificate = run.certificate;
  report.constant_kind = "lipschitz";
  report.constant_value = run.lipschitz;
  report.constant_source = "exact";
  for (const PolylineLevel& level : run.levels) {
    report.mesh_sizes.push_back(mesh_size(level));
  }
  report.bounds_checked = run.certificate.points_convergent;
  if (!report.bounds_checked) {
    report.notes.push_back("schedule not certified; bounds omitted (forced run)");
  }
  for (int k = 0; k + 1 <= cfg.levels; ++k) {
    DistanceRow row;
    row.from_level = k;
    row.measured = successive_sup_distance(run, k, cfg.samples.per_interval);
    row.checked = report.bounds_checked;
    if (row.checked) {
      row.bound = 0.5 * run.lipschitz * report.mesh_sizes[static_cast<std::size_t>(k) + 1] *
                  cfg.bound_scale;
      row.pass = bound_holds(row.measured, row.bound);
    }
    report.distances.push_back(row);
  }
  report.tail_bounds = run.tail_bounds;

  if (!cfg.output_dir.empty()) {
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    for (const PolylineLevel& level : run.levels) {
      write_text_file(dir / ("points_level_" + std::to_string(level.level) + ".csv"),
                      polyline_csv(level, false), result.written_files);
    }
    write_text_file(dir / "points_final.csv", polyline_csv(run.levels.back(), true),
                    result.written_files);
  }
  result.exit_code = report.all_pass() ? 0 : 1;
  return result;
}

RunResult run_net_mode(const RunConfig& cfg) {
  RunResult result;
  Report& report = result.report;
  report.mode = "net";

  WeightSchedule s_schedule = cfg.directional ? cfg.s_weights.build(cfg.margin)
                                              : cfg.weights.build(cfg.margin);
  WeightSchedule t_schedule = cfg.directional ? cfg.t_weights.build(cfg.margin)
                                              : cfg.weights.build(cfg.margin);

  const NetOfFunctions initial = build_initial_net(cfg);

  NetRunOptions options;
  options.force = cfg.force;
  options.resample = cfg.resample;
  options.resample_points_per_cell = cfg.samples.resample_per_cell;
  options.bmsdd_constant = cfg.bmsdd_constant;
  options.bmsdd_samples_per_interval = cfg.samples.bmsdd_per_interval;
  const NetRun run = run_nets(initial, s_schedule, t_schedule, cfg.levels, options);

  report.certificate = run.certificate;
  report.constant_kind = "bmsdd";
  report.constant_value = run.bmsdd_constant;
  report.constant_source = run.bmsdd_estimated ? "estimated" : "exact";
  for (const auto& net : run.nets) {
    report.mesh_sizes_st.emplace_back(net->grid().mesh_s(), net->grid().mesh_t());
  }
  if (run.resampled) {
    report.notes.push_back(
        "u-functions were resampled to piecewise-linear approximations (" +
        std::to_string(cfg.samples.resample_per_cell) +
        " points per cell); measured values are approximate");
  }
  {
    // The refinement rules accept arbitrary strictly increasing knots; flag
    // initial grids that are not the plain unit-spaced window.
    const auto& g = run.nets.front()->grid();
    bool unit = true;
    for (std::size_t i = 0; i + 1 < g.s().size() && unit; ++i) {
      unit = std::abs(g.s()[i + 1] - g.s()[i] - 1.0) < 1e-12;
    }
    for (std::size_t j = 0; j + 1 < g.t().size() && unit; ++j) {
      unit = std::abs(g.t()[j + 1] - g.t()[j] - 1.0) < 1e-12;
    }
    if (!unit) {
      report.notes.push_back("initial grid is not unit-spaced; refinement of general "
                             "grids extends the plain integer-grid setting");
    }
  }
  report.bounds_checked = run.certificate.nets_convergent;
  if (!report.bounds_checked) {
    report.notes.push_back("schedule not certified for nets; bounds omitted (forced run)");
  }
  for (int k = 0; k + 1 <= cfg.levels; ++k) {
    DistanceRow row;
    row.from_level = k;
    row.measured = net_successive_distance(run, k, cfg.samples.grid);
    row.checked = report.bounds_checked;
    if (row.checked) {
      const auto& [hs, ht] = report.mesh_sizes_st[static_cast<std::size_t>(k) + 1];
      row.bound = std::pow(3.0, k + 1) * run.bmsdd_constant * hs * ht / 4.0 *
                  cfg.bound_scale;
      row.pass = bound_holds(row.measured, row.bound);
    }
    report.distances.push_back(row);
  }
  report.tail_bounds = run.tail_bounds;

  if (!cfg.output_dir.empty()) {
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    const Rect window = run.nets.back()->grid().bounds();
    write_text_file(dir / "surface_first.csv",
                    surface_csv(*run.surfaces.front(), window, cfg.samples.grid),
                    result.written_files);
    write_text_file(dir / "surface_last.csv",
                    surface_csv(*run.surfaces.back(), window, cfg.samples.grid),
                    result.written_files);
  }
  result.exit_code = report.all_pass() ? 0 : 1;
  return result;
}

}  // namespace

PolylineLevel build_initial_polyline(const RunConfig& cfg) {
  if (!cfg.has_points_initial) {
    throw ConfigError("/initial/points", "points mode needs initial points");
  }
  const PointsInitial& init = cfg.points_initial;
  if (init.topology == Topology::closed) {
    return make_closed_polyline(init.points, init.u, init.period);
  }
  return make_open_polyline(init.points, init.u);
}

NetOfFunctions load_net_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/initial/file", "cannot open net file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("/initial/file", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("s_knots") || !j.contains("t_knots") ||
      !j.contains("values")) {
    throw ConfigError("/initial/file",
                      "net file needs 's_knots', 't_knots' and 'values'");
  }
  GridT grid(j["s_knots"].get<std::vector<double>>(),
             j["t_knots"].get<std::vector<double>>());
  const auto values = j["values"].get<std::vector<std::vector<double>>>();
  return net_from_values(std::move(grid), values);
}

NetOfFunctions build_initial_net(const RunConfig& cfg) {
  if (!cfg.has_net_initial) {
    throw ConfigError("/initial", "net mode needs initial net data");
  }
  const NetInitial& init = cfg.net_initial;
  NetOfFunctions net = [&]() {
    if (!init.file.empty()) return load_net_file(init.file);
    GridT grid(init.s_knots, init.t_knots);
    if (!init.builtin.empty()) {
      return net_from_function(builtin_surface(init.builtin), std::move(grid));
    }
    return net_from_values(std::move(grid), init.values);
  }();
  const C0Report c0 = check_c0(net, cfg.compat_tol);
  if (!c0.compatible()) {
    const auto& m = c0.mismatches.front();
    throw CompatibilityError(
        "initial net is not compatible at crossing (" + std::to_string(m.i) + ", " +
        std::to_string(m.j) + "): phi gives " + std::to_string(m.phi_value) +
        ", psi gives " + std::to_string(m.psi_value) +
        (c0.mismatches.size() > 1
             ? " (+" + std::to_string(c0.mismatches.size() - 1) + " more)"
             : ""));
  }
  return net;
}

RunResult run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  switch (cfg.mode) {
    case RunMode::certify:
      result = run_certify(cfg);
      break;
    case RunMode::points:
      result = run_points_mode(cfg);
      break;
    case RunMode::net:
      result = run_net_mode(cfg);
      break;
    case RunMode::unset:
      throw ConfigError("/mode", "run mode not set (config field or subcommand)");
  }
  result.report.version = kVersion;
  result.report.bound_scale = cfg.bound_scale;
  result.report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!cfg.output_dir.empty()) {
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    write_text_file(dir / "report.json", report_to_json(result.report),
                    result.written_files);
  }
  return result;
}

}  // namespace cornercut
