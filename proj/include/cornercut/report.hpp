#pragma once

#include <string>
#include <vector>

#include "cornercut/weights.hpp"

namespace cornercut {

/// One measured successive distance with its theoretical bound.
struct DistanceRow {
  int from_level = 0;  // distance between this level and the next
  double measured = 0.0;
  double bound = 0.0;    // bound after applying the configured bound scale
  bool checked = true;   // false when bounds are omitted (forced, uncertified)
  bool pass = true;
};

struct Report {
  std::string mode;
  std::string version;
  Certificate certificate;

  std::string constant_kind;    // "lipschitz" or "bmsdd"
  double constant_value = 0.0;
  std::string constant_source;  // "exact" or "estimated"

  std::vector<double> mesh_sizes;                      // points mode, per level
  std::vector<std::pair<double, double>> mesh_sizes_st;  // net mode, per level

  std::vector<DistanceRow> distances;
  std::vector<double> tail_bounds;
  double bound_scale = 1.0;
  bool bounds_checked = true;
  std::vector<std::string> notes;
  double runtime_seconds = 0.0;

  bool all_pass() const noexcept;
};

/// Serialize as pretty JSON (alphabetical keys, round-trip-exact numbers).
std::string report_to_json(const Report& report);

}  // namespace cornercut
