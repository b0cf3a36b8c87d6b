#include "app/quantity.h"

#include <array>
#include <charconv>
#include <cmath>
#include <span>

#include "tmsr/units.h"

namespace tmsr::app {

namespace {

struct Unit {
    std::string_view name;
    double scale;
};

std::span<const Unit> units_for(Dimension dim) {
    static constexpr std::array<Unit, 1> gain = {{{"dB", 1.0}}};
    static constexpr std::array<Unit, 2> angle = {{{"deg", constants::pi / 180.0}, {"rad", 1.0}}};
    static constexpr std::array<Unit, 4> frequency = {{{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}};
    static constexpr std::array<Unit, 4> time = {{{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}}};
    static constexpr std::array<Unit, 1> resistance = {{{"ohm", 1.0}}};
    switch (dim) {
        case Dimension::gain_db: return gain;
        case Dimension::angle: return angle;
        case Dimension::frequency: return frequency;
        case Dimension::time: return time;
        case Dimension::resistance: return resistance;
    }
    return {};
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string accepted_units(Dimension dim) {
    std::string out;
    const auto units = units_for(dim);
    for (std::size_t k = 0; k < units.size(); ++k) {
        if (k > 0) out += k + 1 == units.size() ? " or " : ", ";
        out += units[k].name;
    }
    return out;
}

double parse_quantity(std::string_view text, Dimension dim) {
    const std::string_view s = trim(text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end == s.data()) {
        throw QuantityError("expected '<number> <unit>', got '" + std::string(text) + "'");
    }
    const std::string_view unit = trim(std::string_view(end, static_cast<std::size_t>(s.data() + s.size() - end)));
    if (unit.empty()) {
        throw QuantityError("missing unit in '" + std::string(text) + "' (expected " + accepted_units(dim) + ")");
    }
    for (const Unit &u : units_for(dim)) {
        if (unit == u.name) {
            if (!std::isfinite(value)) {
                throw QuantityError("value must be finite, got '" + std::string(text) + "'");
            }
            return value * u.scale;
        }
    }
    throw QuantityError("unknown unit '" + std::string(unit) + "' (expected " + accepted_units(dim) + ")");
}

}  // namespace tmsr::app
