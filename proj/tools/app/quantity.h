#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tmsr::app {

/// Physical dimension of a config value. Dimensionless ratios, photon
/// numbers and counts are plain JSON numbers; everything else is a string
/// "<number> <unit>" and the unit is mandatory.
enum class Dimension { gain_db, angle, frequency, time, resistance };

/// Thrown for malformed quantities; the caller attaches the key path.
class QuantityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Parses "<number> <unit>" (the space is optional) and returns the value in
/// the base unit: dB, rad, Hz, s or ohm. Accepted units:
///   gain_db     dB
///   angle       deg, rad
///   frequency   Hz, kHz, MHz, GHz
///   time        s, ms, us, ns
///   resistance  ohm
double parse_quantity(std::string_view text, Dimension dim);

/// Units accepted for `dim`, for error messages ("deg or rad").
std::string accepted_units(Dimension dim);

}  // namespace tmsr::app
