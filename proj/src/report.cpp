#include "cornercut/report.hpp"

#include <json.hpp>

namespace cornercut {

using nlohmann::json;

bool Report::all_pass() const noexcept {
  for (const DistanceRow& row : distances) {
    if (row.checked && !row.pass) return false;
  }
  return true;
}

std::string report_to_json(const Report& report) {
  json j;
  j["mode"] = report.mode;
  j["version"] = report.version;

  json cert;
  cert["mu_per_level"] = report.certificate.mu_per_level;
  cert["mu_sup"] = report.certificate.mu_sup;
  cert["points_convergent"] = report.certificate.points_convergent;
  cert["nets_convergent"] = report.certificate.nets_convergent;
  cert["margin"] = report.certificate.margin;
  cert["thresholds"] = {{"points", 1.0}, {"nets", kNetContractionThreshold}};
  j["certificate"] = cert;

  if (!report.constant_kind.empty()) {
    j["constant"] = {{"kind", report.constant_kind},
                     {"value", report.constant_value},
                     {"source", report.constant_source}};
  }
  if (!report.mesh_sizes.empty()) {
    j["mesh_sizes"] = report.mesh_sizes;
  }
  if (!report.mesh_sizes_st.empty()) {
    json rows = json::array();
    for (const auto& [hs, ht] : report.mesh_sizes_st) {
      rows.push_back({{"s", hs}, {"t", ht}});
    }
    j["mesh_sizes"] = rows;
  }
  if (!report.distances.empty()) {
    json rows = json::array();
    for (const DistanceRow& row : report.distances) {
      json r;
      r["from_level"] = row.from_level;
      r["measured"] = row.measured;
      if (row.checked) {
        r["bound"] = row.bound;
        r["pass"] = row.pass;
      }
      rows.push_back(r);
    }
    j["distances"] = rows;
  }
  if (!report.tail_bounds.empty()) {
    j["tail_bounds"] = report.tail_bounds;
  }
  j["bound_scale"] = report.bound_scale;
  j["bounds_checked"] = report.bounds_checked;
  if (!report.notes.empty()) j["notes"] = report.notes;
  j["runtime"] = {{"seconds", report.runtime_seconds}};
  return j.dump(2) + "\n";
}

}  // namespace cornercut
