#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "app/quantity.h"

namespace tmsr::app {

using nlohmann::json;

/// Invalid configuration: schema violation, bad unit, unknown fixture,
/// unreadable file. Maps to exit status 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct SourceLocation {
    std::size_t line = 0;  // 1-based
    std::size_t column = 0;
};

/// JSON document plus the source position of every key and value, addressed
/// by path ("params.gains[1]", "params.phi_grid.step").
struct Document {
    std::string origin;  // file name or "<builtin>"
    json value;
    std::map<std::string, SourceLocation> locations;

    /// "origin:line:col: path: message", or "origin: path: message" when the
    /// path has no recorded position.
    std::string diagnostic(const std::string &path, const std::string &message) const;
};

/// Parses JSON text and records positions. Syntax errors become ConfigError
/// with line and column.
Document parse_document(std::string_view text, std::string origin);
Document load_document(const std::filesystem::path &path);

enum class Command { analytic, simulate, phi_sweep, landscape, calibrate, backaction };

std::string_view to_string(Command command);
std::optional<Command> command_from_string(std::string_view name);

enum class ParamKind {
    plain,          // JSON number
    count,          // JSON unsigned integer >= 1
    quantity,       // "<number> <unit>"
    quantity_list,  // array of quantities
    grid,           // {"start", "stop", "step"}, quantities or plain numbers
    choice,         // one of a fixed set of strings
    path,           // file path string
};

struct ParamSpec {
    std::string_view key;
    ParamKind kind;
    std::optional<Dimension> dimension;  // quantity kinds; grids without one are plain
    std::span<const std::string_view> choices;
    std::string_view help;
};

std::span<const ParamSpec> param_schema();

/// Strict check of a "params" object: unknown keys, wrong JSON types and
/// malformed units raise ConfigError naming the key and its position.
void validate_params(const Document &doc, const json &params, const std::string &prefix);

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
};

/// Fully merged configuration for one run. Values keep their textual form so
/// to_json() reproduces the run exactly.
struct ResolvedConfig {
    Command command = Command::analytic;
    std::string fixture;
    std::uint64_t seed = 0;
    std::string format = "csv";
    json params = json::object();

    json to_json() const;

    bool has(std::string_view key) const;
    double plain(std::string_view key) const;
    std::uint64_t count(std::string_view key) const;
    /// Value in base units (dB, rad, Hz, s, ohm).
    double quantity(std::string_view key) const;
    std::vector<double> quantity_list(std::string_view key) const;
    Grid grid(std::string_view key) const;
    std::string text(std::string_view key) const;
};

/// Values given on the command line; they override everything else.
struct Overrides {
    std::optional<std::string> fixture;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
};

/// Looks up a fixture by name. Throws ConfigError for unknown names.
using FixtureLookup = Document (*)(const std::string &name);

/// Merges built-in defaults < fixture < config file < command-line overrides,
/// key by key inside "params". The fixture is chosen by the override, then the
/// config file's "fixture" key, then "paper-defaults"; "none" disables it.
/// Throws ConfigError when the config file names a different command.
ResolvedConfig resolve(Command command, const Document *config_file, const Overrides &overrides,
                       FixtureLookup lookup);

/// Top-level keys allowed in a config file.
void validate_config_file(const Document &doc);

}  // namespace tmsr::app
