#include "app/fixtures.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

namespace tmsr::app {

namespace {

constexpr std::string_view kDefaults = R"({
  "params": {
    "R_load": "50 ohm",
    "alpha_bar": 1,
    "threshold": "midpoint",
    "line": "a",
    "shots": 10000,
    "gain_grid": {"start": "0 dB", "stop": "24 dB", "step": "0.25 dB"},
    "noise_grid": {"start": 0.5, "stop": 50, "step": 0.5},
    "phi_grid": {"start": "0 deg", "stop": "355 deg", "step": "5 deg"}
  }
})";

// Device and chain parameters of the reference transmon + Josephson mixer setup.
constexpr std::string_view kReferenceDevice = R"({
  "description": "transmon readout through a Josephson mixer, two calibrated output lines",
  "params": {
    "theta": "53.7 deg",
    "f_a": "7.2284 GHz",
    "f_b": "9.7056 GHz",
    "kappa": "1.91 MHz",
    "chi": "0.94 MHz",
    "T1": "75 us",
    "T2E": "52 us",
    "G_sys_a": 3.4e6,
    "G_sys_b": 1.7e7,
    "N_sys_a": 28.2,
    "N_sys_b": 13.4,
    "nbar_in": 90,
    "shots": 10000,
    "T_int": "1 us",
    "R_load": "50 ohm",
    "gain": "2.3 dB",
    "gains": ["1.3 dB", "2.3 dB", "3.3 dB", "4 dB"],
    "i2_in": 5
  }
})";

constexpr std::string_view kBuiltinName = "paper-defaults";

void validate_fixture(const Document &doc) {
    if (!doc.value.is_object()) {
        throw ConfigError(doc.origin + ": fixture must be a JSON object");
    }
    for (const auto &[key, value] : doc.value.items()) {
        if (key == "description") {
            if (!value.is_string()) throw ConfigError(doc.diagnostic(key, "expected a string"));
        } else if (key != "params") {
            throw ConfigError(doc.diagnostic(key, "unknown key (fixtures hold description and params)"));
        }
    }
    if (!doc.value.contains("params")) {
        throw ConfigError(doc.origin + ": fixture has no params");
    }
    validate_params(doc, doc.value.at("params"), "params");
}

std::filesystem::path fixture_dir() {
    const char *dir = std::getenv(kFixtureDirEnv);
    return dir != nullptr ? std::filesystem::path(dir) : std::filesystem::path();
}

}  // namespace

Document builtin_defaults() {
    Document doc = parse_document(kDefaults, "<defaults>");
    validate_fixture(doc);
    return doc;
}

Document find_fixture(const std::string &name) {
    if (name == kBuiltinName) {
        Document doc = parse_document(kReferenceDevice, "<paper-defaults>");
        validate_fixture(doc);
        return doc;
    }
    const std::filesystem::path dir = fixture_dir();
    if (!dir.empty()) {
        const std::filesystem::path file = dir / (name + ".json");
        std::error_code ec;
        if (std::filesystem::is_regular_file(file, ec)) {
            Document doc = load_document(file);
            validate_fixture(doc);
            return doc;
        }
    }
    std::string names;
    for (const std::string &n : list_fixtures()) {
        names += (names.empty() ? "" : ", ") + n;
    }
    throw ConfigError("unknown fixture '" + name + "'; available: " + names);
}

std::vector<std::string> list_fixtures() {
    std::vector<std::string> names = {std::string(kBuiltinName)};
    const std::filesystem::path dir = fixture_dir();
    std::error_code ec;
    if (!dir.empty() && std::filesystem::is_directory(dir, ec)) {
        for (const auto &entry : std::filesystem::directory_iterator(dir, ec)) {
            if (entry.path().extension() == ".json") {
                names.push_back(entry.path().stem().string());
            }
        }
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

}  // namespace tmsr::app
