#pragma once

#include <string>
#include <vector>

#include "cornercut/transfinite.hpp"

namespace cornercut {

/// Built-in bivariate surfaces usable as initial nets in configs and tests.
std::vector<std::string> builtin_surface_names();

/// Look up a built-in surface by name; throws with the list of known names.
BivariateFn builtin_surface(const std::string& name);

}  // namespace cornercut
