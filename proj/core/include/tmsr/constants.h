#pragma once

#include <numbers>

namespace tmsr::constants {

// CODATA values, truncated to five significant digits.
inline constexpr double hbar = 1.0546e-34;         // J s
inline constexpr double boltzmann = 1.3806e-23;    // J / K
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double default_load_ohms = 50.0;

}  // namespace tmsr::constants
