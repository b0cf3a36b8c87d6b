#include "app/commands.h"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include "tmsr/backaction.h"
#include "tmsr/calibration.h"
#include "tmsr/metrics.h"
#include "tmsr/parallel.h"
#include "tmsr/readout_stats.h"
#include "tmsr/shot_io.h"
#include "tmsr/shots.h"
#include "tmsr/units.h"

namespace tmsr::app {

namespace {

using ojson = nlohmann::ordered_json;
using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;  // CSV comment lines between header block and columns
    ojson extra = ojson::object();   // JSON-only fields of "result"
};

std::string csv_cell(const Cell &cell) {
    if (const double *d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

ojson json_cell(const Cell &cell) {
    if (const double *d = std::get_if<double>(&cell)) return *d;
    return std::get<std::string>(cell);
}

std::vector<std::string> header_block(const ResolvedConfig &config) {
    return {tool_banner(), "config: " + config.to_json().dump()};
}

void emit(const ResolvedConfig &config, const Table &table, std::ostream &out) {
    if (config.format == "json") {
        ojson result = ojson::object();
        result["columns"] = table.columns;
        ojson rows = ojson::array();
        for (const auto &row : table.rows) {
            ojson r = ojson::array();
            for (const Cell &c : row) r.push_back(json_cell(c));
            rows.push_back(std::move(r));
        }
        result["rows"] = std::move(rows);
        for (const auto &[key, value] : table.extra.items()) result[key] = value;
        ojson doc = ojson::object();
        doc["tool"] = tool_banner();
        doc["config"] = ojson::parse(config.to_json().dump());
        doc["result"] = std::move(result);
        out << doc.dump(2) << '\n';
        return;
    }
    for (const std::string &line : header_block(config)) out << "# " << line << '\n';
    for (const std::string &line : table.notes) out << "# " << line << '\n';
    for (std::size_t k = 0; k < table.columns.size(); ++k) out << (k ? "," : "") << table.columns[k];
    out << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_cell(row[k]);
        out << '\n';
    }
}

ThresholdRule threshold_rule(const ResolvedConfig &config) {
    return config.text("threshold") == "likelihood_ratio" ? ThresholdRule::likelihood_ratio
                                                          : ThresholdRule::midpoint;
}

std::vector<double> grid_values(const ResolvedConfig &config, std::string_view key) {
    const Grid g = config.grid(key);
    if (!(g.step > 0.0) || g.stop < g.start) {
        throw ConfigError("params." + std::string(key) + ": need step > 0 and stop >= start");
    }
    return linear_grid(g.start, g.stop, g.step);
}

OutputChain chain(const ResolvedConfig &config, Mode mode) {
    const bool a = mode == Mode::a;
    return OutputChain(config.plain(a ? "G_sys_a" : "G_sys_b"), config.plain(a ? "N_sys_a" : "N_sys_b"),
                       hz_to_angular(config.quantity(a ? "f_a" : "f_b")), config.quantity("T_int"),
                       config.quantity("R_load"));
}

ShotSet simulate_cell(const ResolvedConfig &config, double gain_db, std::uint64_t cell) {
    const double nbar = config.plain("nbar_in");
    const double theta = config.quantity("theta");
    return sample_shots(SqueezeParams::from_gain_db(gain_db), {nbar, theta, QubitState::ground},
                        {nbar, theta, QubitState::excited}, chain(config, Mode::a), chain(config, Mode::b),
                        static_cast<std::size_t>(config.count("shots")), config.seed, cell);
}

// Minimal reader for the numeric input tables of calibrate and backaction:
// '#' comments, one header line, comma-separated cells.
struct InputTable {
    std::string origin;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;

    std::size_t column(std::string_view name) const {
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (columns[k] == name) return k;
        }
        return columns.size();
    }
    double number(std::size_t row, std::size_t col) const {
        const std::string &s = rows[row][col];
        double v = 0.0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || end != s.data() + s.size()) {
            throw ConfigError(origin + ":" + std::to_string(lines[row]) + ": column " + columns[col] +
                              ": expected a number, got '" + s + "'");
        }
        return v;
    }
};

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

InputTable read_input(const ResolvedConfig &config) {
    if (!config.has("input")) {
        throw ConfigError("params.input: " + std::string(to_string(config.command)) + " needs an input CSV");
    }
    InputTable table;
    table.origin = config.text("input");
    std::ifstream in(table.origin);
    if (!in) throw ConfigError(table.origin + ": cannot open input file");
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cells = split(line);
        if (table.columns.empty()) {
            table.columns = std::move(cells);
            continue;
        }
        if (cells.size() != table.columns.size()) {
            throw ConfigError(table.origin + ":" + std::to_string(number) + ": expected " +
                              std::to_string(table.columns.size()) + " cells, got " + std::to_string(cells.size()));
        }
        table.rows.push_back(std::move(cells));
        table.lines.push_back(number);
    }
    if (table.columns.empty()) throw ConfigError(table.origin + ": no header line");
    return table;
}

std::size_t require_column(const InputTable &table, std::string_view name) {
    const std::size_t k = table.column(name);
    if (k == table.columns.size()) {
        throw ConfigError(table.origin + ": missing column " + std::string(name));
    }
    return k;
}

std::vector<Cell> metric_cells(const MetricPoint &m) {
    return {m.r_a,      m.r_ab_max, m.r_ab_min,    m.f_a,
            m.f_ab_max, m.f_ab_min, m.snr_ratio(), m.delta_fidelity()};
}

Table run_analytic(const ResolvedConfig &config) {
    Table t{output_columns(Command::analytic), {}, {}, ojson::object()};
    const double na = config.plain("N_sys_a");
    const double nb = config.plain("N_sys_b");
    const double i2 = config.plain("i2_in");
    for (const double g_db : config.quantity_list("gains")) {
        const MetricPoint m = evaluate_metrics(SqueezeParams::from_gain_db(g_db), na, nb, i2);
        std::vector<Cell> row = {g_db, na, nb, i2};
        for (Cell &c : metric_cells(m)) row.push_back(std::move(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table run_landscape(const ResolvedConfig &config, std::size_t jobs) {
    Table t{output_columns(Command::landscape), {}, {}, ojson::object()};
    const std::vector<double> gains = grid_values(config, "gain_grid");
    const std::vector<double> noise = grid_values(config, "noise_grid");
    const Landscape land = landscape(gains, noise, config.plain("i2_in"), jobs);
    for (const LandscapeRow &r : land.rows) {
        std::vector<Cell> row = {r.gain_db, r.n_sys};
        for (Cell &c : metric_cells(r.metrics)) row.push_back(std::move(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table run_phi_sweep(const ResolvedConfig &config, std::size_t jobs) {
    Table t{output_columns(Command::phi_sweep), {}, {}, ojson::object()};
    const std::vector<double> gains = config.quantity_list("gains");
    const std::vector<double> grid = grid_values(config, "phi_grid");
    const ThresholdRule rule = threshold_rule(config);

    std::vector<PhiSweepResult> results(gains.size());
    parallel_for(gains.size(), jobs, [&](std::size_t k) {
        const ShotSet set = simulate_cell(config, gains[k], k);
        results[k] = phi_sweep(set, grid, rule, 1);
    });

    ojson extremes = ojson::array();
    for (std::size_t k = 0; k < gains.size(); ++k) {
        const PhiSweepResult &res = results[k];
        for (const PhiPoint &p : res.points) {
            t.rows.push_back({gains[k], rad_to_deg(p.phi), p.fidelity, p.snr, p.nbar_g, p.nbar_e});
        }
        t.notes.push_back("extremes G_dB=" + format_double(gains[k]) +
                          " phi_max_F_deg=" + format_double(rad_to_deg(res.phi_max_fidelity)) +
                          " phi_min_F_deg=" + format_double(rad_to_deg(res.phi_min_fidelity)) +
                          " phi_min_joint_nbar_deg=" + format_double(rad_to_deg(res.phi_min_joint_nbar)) +
                          " phi_max_joint_nbar_deg=" + format_double(rad_to_deg(res.phi_max_joint_nbar)));
        ojson e = ojson::object();
        e["G_dB"] = gains[k];
        e["phi_max_F_deg"] = rad_to_deg(res.phi_max_fidelity);
        e["phi_min_F_deg"] = rad_to_deg(res.phi_min_fidelity);
        e["phi_min_joint_nbar_deg"] = rad_to_deg(res.phi_min_joint_nbar);
        e["phi_max_joint_nbar_deg"] = rad_to_deg(res.phi_max_joint_nbar);
        extremes.push_back(std::move(e));
    }
    t.extra["extremes"] = std::move(extremes);
    return t;
}

Table run_calibrate(const ResolvedConfig &config) {
    Table t{output_columns(Command::calibrate), {}, {}, ojson::object()};
    const InputTable input = read_input(config);
    const std::size_t c_gain = require_column(input, "G_dB");
    const std::size_t c_value = require_column(input, "value");
    const std::size_t c_kind = require_column(input, "kind");

    std::vector<NoisePowerPoint> points;
    for (std::size_t i = 0; i < input.rows.size(); ++i) {
        const std::string &kind = input.rows[i][c_kind];
        if (kind != "watts" && kind != "photons") {
            throw ConfigError(input.origin + ":" + std::to_string(input.lines[i]) +
                              ": kind must be watts or photons, got '" + kind + "'");
        }
        points.push_back({db_to_linear(input.number(i, c_gain)), input.number(i, c_value),
                          kind == "watts" ? NoiseKind::watts : NoiseKind::photons});
    }

    const std::string line = config.text("line");
    const double omega = hz_to_angular(config.quantity(line == "a" ? "f_a" : "f_b"));
    const CalibrationResult fit = fit_noise_vs_gain(points, omega, config.quantity("T_int"));
    t.rows.push_back({line, fit.n_sys, fit.t_sys, fit.p0, fit.g_sys ? Cell(*fit.g_sys) : Cell(std::string()),
                      fit.bandwidth, fit.fit_rms, snr_improvement_limit(fit.n_sys, omega)});
    ojson residuals = ojson::array();
    for (std::size_t i = 0; i < fit.residuals.size(); ++i) {
        const double g_db = input.number(i, c_gain);
        t.notes.push_back("residual G_dB=" + format_double(g_db) + " value=" + format_double(fit.residuals[i]));
        residuals.push_back(ojson{{"G_dB", g_db}, {"residual", fit.residuals[i]}});
    }
    t.extra["residuals"] = std::move(residuals);
    return t;
}

Table run_backaction(const ResolvedConfig &config, std::ostream &err) {
    Table t{output_columns(Command::backaction), {}, {}, ojson::object()};
    const InputTable input = read_input(config);
    const std::size_t c_gain = require_column(input, "G_dB");
    const bool direct = input.column("nbar_th") != input.columns.size();

    std::vector<double> gains_db;
    std::vector<IsolationPoint> points;
    if (direct) {
        const std::size_t c_nth = require_column(input, "nbar_th");
        for (std::size_t i = 0; i < input.rows.size(); ++i) {
            gains_db.push_back(input.number(i, c_gain));
            points.push_back({db_to_linear(gains_db.back()), input.number(i, c_nth)});
        }
    } else {
        const std::size_t c_t1 = require_column(input, "T1_us");
        const std::size_t c_t2 = require_column(input, "T2E_us");
        const double gamma_c =
            dephasing_per_photon(hz_to_angular(config.quantity("kappa")), hz_to_angular(config.quantity("chi")));
        for (std::size_t i = 0; i < input.rows.size(); ++i) {
            gains_db.push_back(input.number(i, c_gain));
            const double gamma_phi = dephasing_rate(input.number(i, c_t1) * 1e-6, input.number(i, c_t2) * 1e-6);
            const ThermalPhotons nth = nth_from_dephasing(gamma_phi, gamma_c);
            if (nth.approximation_strained) {
                err << "warning: " << input.origin << ":" << input.lines[i] << ": n_th = "
                    << format_double(nth.nbar_th) << " exceeds 0.1; small-occupancy relation is strained\n";
            }
            points.push_back({db_to_linear(gains_db.back()), nth.nbar_th});
        }
    }

    const BackactionFit fit = fit_isolation(points, config.plain("alpha_bar"));
    if (fit.isolation_assumption_strained) {
        err << "warning: L * alpha_bar = " << format_double(fit.isolation * config.plain("alpha_bar"))
            << " exceeds 0.1; the isolation model assumes it is small\n";
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double model = fit.slope * points[i].gain + fit.intercept;
        t.rows.push_back({gains_db[i], points[i].nbar_th, model, points[i].nbar_th - model});
    }
    t.notes.push_back("fit L=" + format_double(fit.isolation) + " L_dB=" + format_double(fit.isolation_db) +
                      " nth_a=" + format_double(fit.nth_a) + " slope=" + format_double(fit.slope) +
                      " intercept=" + format_double(fit.intercept) + " rms=" + format_double(fit.rms));
    ojson f = ojson::object();
    f["L"] = fit.isolation;
    f["L_dB"] = fit.isolation_db;
    f["nth_a"] = fit.nth_a;
    f["slope"] = fit.slope;
    f["intercept"] = fit.intercept;
    f["rms"] = fit.rms;
    f["isolation_assumption_strained"] = fit.isolation_assumption_strained;
    t.extra["fit"] = std::move(f);
    return t;
}

void run_simulate(const ResolvedConfig &config, const RunOptions &options, std::ostream &out) {
    const ShotSet set = simulate_cell(config, config.quantity("gain"), 0);
    if (options.binary_out) {
        std::ofstream bin(*options.binary_out, std::ios::binary);
        if (!bin) throw ConfigError(options.binary_out->string() + ": cannot open for writing");
        write_shots_binary(bin, set);
    }
    if (config.format != "json") {
        write_shots_csv(out, set, header_block(config));
        return;
    }
    Table t{output_columns(Command::simulate), {}, {}, ojson::object()};
    for (const Shot &s : set.shots) {
        t.rows.push_back({std::string(to_string(s.label)), s.quad.i_a, s.quad.q_a, s.quad.i_b, s.quad.q_b});
    }
    const ShotHeader &h = set.header;
    ojson header = ojson::object();
    header["seed"] = h.seed;
    header["cell"] = h.cell;
    header["r"] = h.r;
    header["nbar_in"] = h.nbar_in;
    header["theta"] = h.theta;
    header["n_sys_a"] = h.n_sys_a;
    header["n_sys_b"] = h.n_sys_b;
    header["shots_per_state"] = h.shots_per_state;
    t.extra["header"] = std::move(header);
    emit(config, t, out);
}

}  // namespace

std::string tool_banner() { return std::string("tmsr ") + TMSR_VERSION; }

std::vector<std::string> output_columns(Command command) {
    switch (command) {
        case Command::analytic:
            return {"G_dB", "N_sys_a", "N_sys_b", "I2_in", "R_a",      "R_ab_max",
                    "R_ab_min", "F_a", "F_ab_max", "F_ab_min", "ratio", "deltaF"};
        case Command::simulate: return {"label", "I_a", "Q_a", "I_b", "Q_b"};
        case Command::phi_sweep: return {"G_dB", "phi_deg", "F_ab", "R_ab", "nbar_g", "nbar_e"};
        case Command::landscape:
            return {"G_dB", "N_sys", "R_a", "R_ab_max", "R_ab_min", "F_a", "F_ab_max", "F_ab_min", "ratio", "deltaF"};
        case Command::calibrate:
            return {"line", "N_sys", "T_sys_K", "P0", "G_sys", "BW_Hz", "fit_rms", "snr_improvement_limit"};
        case Command::backaction: return {"G_dB", "nbar_th", "nbar_th_fit", "residual"};
    }
    return {};
}

void run_command(const ResolvedConfig &config, const RunOptions &options, std::ostream &out, std::ostream &err) {
    switch (config.command) {
        case Command::analytic: emit(config, run_analytic(config), out); return;
        case Command::simulate: run_simulate(config, options, out); return;
        case Command::phi_sweep: emit(config, run_phi_sweep(config, options.jobs), out); return;
        case Command::landscape: emit(config, run_landscape(config, options.jobs), out); return;
        case Command::calibrate: emit(config, run_calibrate(config), out); return;
        case Command::backaction: emit(config, run_backaction(config, err), out); return;
    }
}

}  // namespace tmsr::app
