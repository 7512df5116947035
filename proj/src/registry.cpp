#include "cornercut/registry.hpp"

#include <cmath>
#include <map>

namespace cornercut {

namespace {

const std::map<std::string, BivariateFn>& registry() {
  static const std::map<std::string, BivariateFn> table = {
      {"bilinear", [](double s, double t) { return 1.0 + 2.0 * s - t + 3.0 * s * t; }},
      {"product", [](double s, double t) { return s * t; }},
      {"s2t2", [](double s, double t) { return s * s * t * t; }},
      {"s3t", [](double s, double t) { return s * s * s * t; }},
      {"sincos", [](double s, double t) { return std::sin(s) * std::cos(t); }},
      {"sinycosx", [](double s, double t) { return std::sin(t) * std::cos(s); }},
      {"tensor_cubic",
       [](double s, double t) {
         return (0.5 * s * s * s - s + 1.0) * (t * t * t - 2.0 * t + 0.5);
       }},
  };
  return table;
}

}  // namespace

std::vector<std::string> builtin_surface_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

BivariateFn builtin_surface(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) {
    std::string known;
    for (const auto& n : builtin_surface_names()) {
      if (!known.empty()) known += ", ";
      known += n;
    }
    throw Error("unknown built-in surface '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

}  // namespace cornercut
