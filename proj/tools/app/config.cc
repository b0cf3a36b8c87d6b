#include "app/config.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <sstream>

#include "app/fixtures.h"

namespace tmsr::app {

namespace {

// Input iterator over the text that reports how many characters the JSON
// lexer has consumed, so SAX callbacks can be mapped back to positions.
class CountingIterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char *;
    using reference = const char &;

    CountingIterator(const char *p, std::size_t *consumed) : p_(p), consumed_(consumed) {}

    reference operator*() const { return *p_; }
    CountingIterator &operator++() {
        ++p_;
        ++*consumed_;
        return *this;
    }
    CountingIterator operator++(int) {
        CountingIterator old = *this;
        ++*this;
        return old;
    }
    bool operator==(const CountingIterator &other) const { return p_ == other.p_; }
    bool operator!=(const CountingIterator &other) const { return p_ != other.p_; }

   private:
    const char *p_;
    std::size_t *consumed_;
};

class LineIndex {
   public:
    explicit LineIndex(std::string_view text) {
        starts_.push_back(0);
        for (std::size_t k = 0; k < text.size(); ++k) {
            if (text[k] == '\n') starts_.push_back(k + 1);
        }
    }

    SourceLocation at(std::size_t offset) const {
        const auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
        const auto line = static_cast<std::size_t>(it - starts_.begin());
        return {line, offset - starts_[line - 1] + 1};
    }

   private:
    std::vector<std::size_t> starts_;
};

// Records the start offset of every key and value by path.
class Locator : public nlohmann::json_sax<json> {
   public:
    Locator(std::string_view text, const std::size_t *consumed) : text_(text), consumed_(consumed) {}

    std::map<std::string, std::size_t> offsets;

    bool null() override { return scalar(); }
    bool boolean(bool) override { return scalar(); }
    bool number_integer(number_integer_t) override { return scalar(); }
    bool number_unsigned(number_unsigned_t) override { return scalar(); }
    bool number_float(number_float_t, const string_t &) override { return scalar(); }
    bool string(string_t &) override {
        record(value_path(), string_start());
        return true;
    }
    bool binary(binary_t &) override { return scalar(); }

    bool start_object(std::size_t) override {
        const std::string path = value_path();
        record(path, *consumed_ - 1);
        frames_.push_back({false, 0, path, ""});
        return true;
    }
    bool key(string_t &) override {
        // The lexer is positioned just past the key's closing quote.
        Frame &f = frames_.back();
        const std::size_t start = string_start();
        f.key = decoded_key(start);
        record(join(f.path, f.key), start);
        return true;
    }
    bool end_object() override {
        frames_.pop_back();
        return true;
    }
    bool start_array(std::size_t) override {
        const std::string path = value_path();
        record(path, *consumed_ - 1);
        frames_.push_back({true, 0, path, ""});
        return true;
    }
    bool end_array() override {
        frames_.pop_back();
        return true;
    }
    bool parse_error(std::size_t, const std::string &, const nlohmann::detail::exception &) override {
        return false;
    }

   private:
    struct Frame {
        bool array = false;
        std::size_t index = 0;
        std::string path;
        std::string key;
    };

    static std::string join(const std::string &prefix, const std::string &key) {
        return prefix.empty() ? key : prefix + "." + key;
    }

    // Path of the value being reported; advances array indices.
    std::string value_path() {
        if (frames_.empty()) return "";
        Frame &f = frames_.back();
        if (f.array) return f.path + "[" + std::to_string(f.index++) + "]";
        return join(f.path, f.key);
    }

    bool scalar() {
        // Numbers and literals are reported one character after their end.
        std::size_t end = std::min(*consumed_, text_.size());
        std::size_t start = end;
        while (start > 0 && std::string_view("0123456789+-.eEtruefalsn").find(text_[start - 1]) !=
                                std::string_view::npos) {
            --start;
        }
        if (start == end && end > 0) --start;
        record(value_path(), start);
        return true;
    }

    std::size_t string_start() const {
        std::size_t k = std::min(*consumed_, text_.size());
        if (k > 0) --k;  // closing quote
        while (k > 0) {
            --k;
            if (text_[k] == '"' && (k == 0 || text_[k - 1] != '\\')) return k;
        }
        return 0;
    }

    std::string decoded_key(std::size_t start) const {
        const std::size_t end = std::min(*consumed_, text_.size());
        return std::string(text_.substr(start + 1, end - start - 2));
    }

    void record(const std::string &path, std::size_t offset) {
        if (!path.empty()) offsets.emplace(path, offset);
    }

    std::string_view text_;
    const std::size_t *consumed_;
    std::vector<Frame> frames_;
};

constexpr std::array<std::string_view, 2> kThresholdChoices = {"midpoint", "likelihood_ratio"};
constexpr std::array<std::string_view, 2> kLineChoices = {"a", "b"};

const std::array<ParamSpec, 25> kSchema = {{
    {"theta", ParamKind::quantity, Dimension::angle, {}, "dispersive phase separation of the g/e responses"},
    {"f_a", ParamKind::quantity, Dimension::frequency, {}, "signal mode frequency"},
    {"f_b", ParamKind::quantity, Dimension::frequency, {}, "idler mode frequency"},
    {"kappa", ParamKind::quantity, Dimension::frequency, {}, "readout resonator linewidth kappa/2pi"},
    {"chi", ParamKind::quantity, Dimension::frequency, {}, "dispersive shift chi/2pi"},
    {"T1", ParamKind::quantity, Dimension::time, {}, "qubit relaxation time"},
    {"T2E", ParamKind::quantity, Dimension::time, {}, "qubit echo coherence time"},
    {"T_int", ParamKind::quantity, Dimension::time, {}, "integration time"},
    {"R_load", ParamKind::quantity, Dimension::resistance, {}, "digitizer load"},
    {"G_sys_a", ParamKind::plain, std::nullopt, {}, "output chain a power gain (linear)"},
    {"G_sys_b", ParamKind::plain, std::nullopt, {}, "output chain b power gain (linear)"},
    {"N_sys_a", ParamKind::plain, std::nullopt, {}, "output chain a added noise (photons)"},
    {"N_sys_b", ParamKind::plain, std::nullopt, {}, "output chain b added noise (photons)"},
    {"nbar_in", ParamKind::plain, std::nullopt, {}, "readout photons at the amplifier input"},
    {"i2_in", ParamKind::plain, std::nullopt, {}, "input quadrature power I_in^2 (photons)"},
    {"alpha_bar", ParamKind::plain, std::nullopt, {}, "insertion-loss factor of the readout line"},
    {"shots", ParamKind::count, std::nullopt, {}, "shots per prepared state"},
    {"gain", ParamKind::quantity, Dimension::gain_db, {}, "amplifier gain"},
    {"gains", ParamKind::quantity_list, Dimension::gain_db, {}, "amplifier gains, one sweep cell each"},
    {"gain_grid", ParamKind::grid, Dimension::gain_db, {}, "landscape gain axis"},
    {"noise_grid", ParamKind::grid, std::nullopt, {}, "landscape N_sys axis (photons)"},
    {"phi_grid", ParamKind::grid, Dimension::angle, {}, "relative idler rotation axis"},
    {"threshold", ParamKind::choice, std::nullopt, kThresholdChoices, "decision threshold rule"},
    {"line", ParamKind::choice, std::nullopt, kLineChoices, "output line being calibrated"},
    {"input", ParamKind::path, std::nullopt, {}, "measurement CSV"},
}};

const ParamSpec *find_spec(std::string_view key) {
    for (const ParamSpec &s : kSchema) {
        if (s.key == key) return &s;
    }
    return nullptr;
}

std::string type_name(const json &v) { return v.type_name(); }

void check_quantity(const Document &doc, const std::string &path, const json &v, Dimension dim) {
    if (!v.is_string()) {
        if (v.is_number()) {
            throw ConfigError(doc.diagnostic(path, "missing unit; write \"" + v.dump() + " <unit>\" with unit " +
                                                       accepted_units(dim)));
        }
        throw ConfigError(doc.diagnostic(path, "expected a quantity string, got " + type_name(v)));
    }
    try {
        parse_quantity(v.get<std::string>(), dim);
    } catch (const QuantityError &err) {
        throw ConfigError(doc.diagnostic(path, err.what()));
    }
}

void check_value(const Document &doc, const ParamSpec &spec, const std::string &path, const json &v) {
    switch (spec.kind) {
        case ParamKind::plain:
            if (!v.is_number()) {
                throw ConfigError(doc.diagnostic(path, "expected a plain number, got " + type_name(v)));
            }
            break;
        case ParamKind::count:
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
                throw ConfigError(doc.diagnostic(path, "expected a positive integer"));
            }
            break;
        case ParamKind::quantity: check_quantity(doc, path, v, *spec.dimension); break;
        case ParamKind::quantity_list:
            if (!v.is_array() || v.empty()) {
                throw ConfigError(doc.diagnostic(path, "expected a non-empty array"));
            }
            for (std::size_t k = 0; k < v.size(); ++k) {
                check_quantity(doc, path + "[" + std::to_string(k) + "]", v[k], *spec.dimension);
            }
            break;
        case ParamKind::grid: {
            if (!v.is_object()) {
                throw ConfigError(doc.diagnostic(path, "expected an object with start, stop and step"));
            }
            for (const auto &[k, item] : v.items()) {
                if (k != "start" && k != "stop" && k != "step") {
                    throw ConfigError(doc.diagnostic(path + "." + k, "unknown key (expected start, stop, step)"));
                }
                if (spec.dimension) {
                    check_quantity(doc, path + "." + k, item, *spec.dimension);
                } else if (!item.is_number()) {
                    throw ConfigError(doc.diagnostic(path + "." + k, "expected a plain number, got " + type_name(item)));
                }
            }
            for (const char *k : {"start", "stop", "step"}) {
                if (!v.contains(k)) {
                    throw ConfigError(doc.diagnostic(path, std::string("missing key '") + k + "'"));
                }
            }
            break;
        }
        case ParamKind::choice: {
            bool ok = v.is_string();
            std::string options;
            for (std::string_view c : spec.choices) {
                if (ok && v.get<std::string>() == c) return;
                options += (options.empty() ? "" : ", ") + std::string(c);
            }
            throw ConfigError(doc.diagnostic(path, "expected one of: " + options));
        }
        case ParamKind::path:
            if (!v.is_string() || v.get<std::string>().empty()) {
                throw ConfigError(doc.diagnostic(path, "expected a file path string"));
            }
            break;
    }
}

const json &require(const json &params, std::string_view key) {
    const auto it = params.find(std::string(key));
    if (it == params.end()) {
        throw ConfigError("missing required key params." + std::string(key));
    }
    return *it;
}

double grid_value(const json &v, const ParamSpec &spec) {
    return spec.dimension ? parse_quantity(v.get<std::string>(), *spec.dimension) : v.get<double>();
}

}  // namespace

std::string Document::diagnostic(const std::string &path, const std::string &message) const {
    const auto it = locations.find(path);
    if (it == locations.end()) {
        return origin + ": " + path + ": " + message;
    }
    return origin + ":" + std::to_string(it->second.line) + ":" + std::to_string(it->second.column) + ": " + path +
           ": " + message;
}

Document parse_document(std::string_view text, std::string origin) {
    Document doc;
    doc.origin = std::move(origin);
    try {
        doc.value = json::parse(text);
    } catch (const json::parse_error &err) {
        const SourceLocation loc = LineIndex(text).at(err.byte > 0 ? err.byte - 1 : 0);
        std::string what = err.what();
        const auto pos = what.find("parse error");
        throw ConfigError(doc.origin + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) +
                          ": invalid JSON: " + (pos == std::string::npos ? what : what.substr(pos)));
    }
    std::size_t consumed = 0;
    Locator locator(text, &consumed);
    json::sax_parse(CountingIterator(text.data(), &consumed), CountingIterator(text.data() + text.size(), &consumed),
                    &locator);
    const LineIndex lines(text);
    for (const auto &[path, offset] : locator.offsets) {
        doc.locations.emplace(path, lines.at(offset));
    }
    return doc;
}

Document load_document(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str(), path.string());
}

std::string_view to_string(Command command) {
    switch (command) {
        case Command::analytic: return "analytic";
        case Command::simulate: return "simulate";
        case Command::phi_sweep: return "phi-sweep";
        case Command::landscape: return "landscape";
        case Command::calibrate: return "calibrate";
        case Command::backaction: return "backaction";
    }
    return "";
}

std::optional<Command> command_from_string(std::string_view name) {
    for (Command c : {Command::analytic, Command::simulate, Command::phi_sweep, Command::landscape,
                      Command::calibrate, Command::backaction}) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

std::span<const ParamSpec> param_schema() { return kSchema; }

void validate_params(const Document &doc, const json &params, const std::string &prefix) {
    if (!params.is_object()) {
        throw ConfigError(doc.diagnostic(prefix, "expected an object"));
    }
    for (const auto &[key, value] : params.items()) {
        const std::string path = prefix + "." + key;
        const ParamSpec *spec = find_spec(key);
        if (spec == nullptr) {
            throw ConfigError(doc.diagnostic(path, "unknown key"));
        }
        check_value(doc, *spec, path, value);
    }
}

void validate_config_file(const Document &doc) {
    if (!doc.value.is_object()) {
        throw ConfigError(doc.origin + ": top level must be an object");
    }
    for (const auto &[key, value] : doc.value.items()) {
        if (key == "command") {
            if (!value.is_string() || !command_from_string(value.get<std::string>())) {
                throw ConfigError(doc.diagnostic(key, "unknown command"));
            }
        } else if (key == "fixture") {
            if (!value.is_string()) throw ConfigError(doc.diagnostic(key, "expected a fixture name"));
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) throw ConfigError(doc.diagnostic(key, "expected an unsigned integer"));
        } else if (key == "format") {
            if (!value.is_string() || (value != "csv" && value != "json")) {
                throw ConfigError(doc.diagnostic(key, "expected \"csv\" or \"json\""));
            }
        } else if (key == "params") {
            validate_params(doc, value, "params");
        } else {
            throw ConfigError(doc.diagnostic(key, "unknown key"));
        }
    }
}

json ResolvedConfig::to_json() const {
    return json{{"command", std::string(to_string(command))},
                {"fixture", fixture},
                {"seed", seed},
                {"format", format},
                {"params", params}};
}

bool ResolvedConfig::has(std::string_view key) const { return params.contains(std::string(key)); }

double ResolvedConfig::plain(std::string_view key) const { return require(params, key).get<double>(); }

std::uint64_t ResolvedConfig::count(std::string_view key) const {
    return require(params, key).get<std::uint64_t>();
}

double ResolvedConfig::quantity(std::string_view key) const {
    return parse_quantity(require(params, key).get<std::string>(), *find_spec(key)->dimension);
}

std::vector<double> ResolvedConfig::quantity_list(std::string_view key) const {
    const Dimension dim = *find_spec(key)->dimension;
    std::vector<double> out;
    for (const json &v : require(params, key)) {
        out.push_back(parse_quantity(v.get<std::string>(), dim));
    }
    return out;
}

Grid ResolvedConfig::grid(std::string_view key) const {
    const json &g = require(params, key);
    const ParamSpec &spec = *find_spec(key);
    return {grid_value(g.at("start"), spec), grid_value(g.at("stop"), spec), grid_value(g.at("step"), spec)};
}

std::string ResolvedConfig::text(std::string_view key) const { return require(params, key).get<std::string>(); }

ResolvedConfig resolve(Command command, const Document *config_file, const Overrides &overrides,
                       FixtureLookup lookup) {
    ResolvedConfig out;
    out.command = command;
    out.seed = 1;
    out.format = "csv";

    const Document defaults = builtin_defaults();
    out.params = defaults.value.at("params");

    if (config_file != nullptr) {
        validate_config_file(*config_file);
        const json &v = config_file->value;
        if (v.contains("command") && v.at("command").get<std::string>() != to_string(command)) {
            throw ConfigError(config_file->diagnostic("command", "config is for '" + v.at("command").get<std::string>() +
                                                                     "', not '" + std::string(to_string(command)) +
                                                                     "'"));
        }
        if (v.contains("seed")) out.seed = v.at("seed").get<std::uint64_t>();
        if (v.contains("format")) out.format = v.at("format").get<std::string>();
    }

    out.fixture = "paper-defaults";
    if (config_file != nullptr && config_file->value.contains("fixture")) {
        out.fixture = config_file->value.at("fixture").get<std::string>();
    }
    if (overrides.fixture) out.fixture = *overrides.fixture;

    if (out.fixture != "none") {
        const Document fixture = lookup(out.fixture);
        for (const auto &[key, value] : fixture.value.at("params").items()) {
            out.params[key] = value;
        }
    }
    if (config_file != nullptr && config_file->value.contains("params")) {
        for (const auto &[key, value] : config_file->value.at("params").items()) {
            out.params[key] = value;
        }
    }
    if (overrides.seed) out.seed = *overrides.seed;
    if (overrides.format) {
        if (*overrides.format != "csv" && *overrides.format != "json") {
            throw ConfigError("--format: expected csv or json, got '" + *overrides.format + "'");
        }
        out.format = *overrides.format;
    }
    return out;
}

}  // namespace tmsr::app
