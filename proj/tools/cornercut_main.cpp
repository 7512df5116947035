#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cornercut/runner.hpp"
#include "cornercut/version.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string output_dir;
  std::optional<int> levels;
  std::optional<int> samples;
  std::optional<int> grid;
  std::optional<double> margin;
  std::optional<double> bound_scale;
  bool force = false;
  bool resample = false;
};

void add_common_options(CLI::App* cmd, CliOverrides& opts, bool with_output) {
  cmd->add_option("-c,--config", opts.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  if (with_output) {
    cmd->add_option("-o,--output", opts.output_dir, "directory for geometry and report");
    cmd->add_option("-K,--levels", opts.levels, "refinement steps (overrides config)");
    cmd->add_option("--samples", opts.samples,
                    "samples per interval for distance measurement");
    cmd->add_option("--grid", opts.grid, "surface sampling grid per side");
    cmd->add_option("--bound-scale", opts.bound_scale,
                    "scale bounds before the pass/fail comparison (diagnostic)");
    cmd->add_flag("--force", opts.force, "run even when certification fails");
    cmd->add_flag("--resample", opts.resample,
                  "replace surface traces by piecewise-linear resamples");
  }
  cmd->add_option("--margin", opts.margin, "weight-class validation margin");
}

cornercut::RunConfig make_config(const CliOverrides& opts, cornercut::RunMode mode) {
  cornercut::RunConfig cfg = cornercut::load_config_file(opts.config_path);
  if (cfg.mode != cornercut::RunMode::unset && cfg.mode != mode) {
    throw cornercut::ConfigError("/mode", "config says '" + to_string(cfg.mode) +
                                              "' but the subcommand is '" +
                                              to_string(mode) + "'");
  }
  cfg.mode = mode;
  if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
  if (opts.levels) cfg.levels = *opts.levels;
  if (opts.samples) cfg.samples.per_interval = *opts.samples;
  if (opts.grid) cfg.samples.grid = *opts.grid;
  if (opts.margin) cfg.margin = *opts.margin;
  if (opts.bound_scale) cfg.bound_scale = *opts.bound_scale;
  if (opts.force) cfg.force = true;
  if (opts.resample) cfg.resample = true;
  return cfg;
}

int execute(const CliOverrides& opts, cornercut::RunMode mode) {
  const cornercut::RunConfig cfg = make_config(opts, mode);
  const cornercut::RunResult result = cornercut::run(cfg);
  std::cout << cornercut::report_to_json(result.report);
  for (const std::string& file : result.written_files) {
    std::cerr << "wrote " << file << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corner cutting refinement of polylines and nets of functions"};
  app.set_version_flag("--version", cornercut::kVersion);
  app.require_subcommand(1);

  CliOverrides certify_opts, points_opts, net_opts;
  CLI::App* certify_cmd =
      app.add_subcommand("certify", "validate weights and report the contraction factor");
  add_common_options(certify_cmd, certify_opts, false);
  CLI::App* points_cmd =
      app.add_subcommand("points", "refine a polyline and check the distance bounds");
  add_common_options(points_cmd, points_opts, true);
  CLI::App* net_cmd =
      app.add_subcommand("net", "refine a net of functions and check the distance bounds");
  add_common_options(net_cmd, net_opts, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify_cmd->parsed()) return execute(certify_opts, cornercut::RunMode::certify);
    if (points_cmd->parsed()) return execute(points_opts, cornercut::RunMode::points);
    return execute(net_opts, cornercut::RunMode::net);
  } catch (const cornercut::NotCertifiedError& e) {
    std::cerr << "not certified: " << e.what() << "\n";
    return 2;
  } catch (const cornercut::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
