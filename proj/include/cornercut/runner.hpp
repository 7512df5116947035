#pragma once

#include <string>
#include <vector>

#include "cornercut/config.hpp"
#include "cornercut/nets.hpp"
#include "cornercut/report.hpp"

namespace cornercut {

struct RunResult {
  Report report;
  int exit_code = 0;  // 0 = all bound checks pass, 1 = a bound check failed
  std::vector<std::string> written_files;
};

/// Build the initial net described by a config (built-in surface, data file
/// or inline values) and verify its crossing compatibility.
NetOfFunctions build_initial_net(const RunConfig& cfg);

/// Build the initial polyline described by a points config.
PolylineLevel build_initial_polyline(const RunConfig& cfg);

/// Load a net data file: JSON with "s_knots", "t_knots" and a crossing-value
/// matrix "values" (values[i][j] belongs to (s_i, t_j)); the u-functions are
/// piecewise linear through the crossings.
NetOfFunctions load_net_file(const std::string& path);

/// Execute a config end to end: certify, refine, measure distances against
/// their bounds, and export geometry when an output directory is set.
/// Throws NotCertifiedError when certification fails without force.
RunResult run(const RunConfig& cfg);

}  // namespace cornercut
