#pragma once

#include <string>
#include <vector>

#include "app/config.h"

namespace tmsr::app {

/// Environment variable naming a directory of extra fixtures, one
/// <name>.json file each with the layout {"description": ..., "params": {...}}.
inline constexpr const char *kFixtureDirEnv = "TMSR_FIXTURE_DIR";

/// Lowest-precedence values (thresholds, grids, load resistance).
Document builtin_defaults();

/// Built-in fixture first, then $TMSR_FIXTURE_DIR/<name>.json. Throws
/// ConfigError listing the available names when nothing matches.
Document find_fixture(const std::string &name);

/// Names of every fixture that find_fixture() can return, sorted.
std::vector<std::string> list_fixtures();

}  // namespace tmsr::app
