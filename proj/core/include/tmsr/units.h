#pragma once

#include <cmath>

#include "tmsr/constants.h"

namespace tmsr {

/// Power ratio from decibels, 10*log10 convention.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

inline double deg_to_rad(double deg) { return deg * constants::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / constants::pi; }

/// Angular rate from an ordinary frequency (e.g. kappa/2pi in Hz -> kappa in rad/s).
inline double hz_to_angular(double hz) { return constants::two_pi * hz; }

}  // namespace tmsr
