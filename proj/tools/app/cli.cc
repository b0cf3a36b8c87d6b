#include "app/cli.h"

#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "app/commands.h"
#include "app/config.h"
#include "app/fixtures.h"
#include "tmsr/errors.h"

namespace tmsr::app {

namespace {

constexpr Command kCommands[] = {Command::analytic,  Command::simulate,  Command::phi_sweep,
                                 Command::landscape, Command::calibrate, Command::backaction};

std::string_view describe(Command command) {
    switch (command) {
        case Command::analytic: return "closed-form SNR and fidelity at each gain in params.gains";
        case Command::simulate: return "draw labeled IQ shots at params.gain";
        case Command::phi_sweep: return "fidelity and photon number of the combined mode versus phase";
        case Command::landscape: return "metric grid over gain_grid x noise_grid with equal chain noise";
        case Command::calibrate: return "fit N_sys and T_sys from noise power versus gain (params.input)";
        case Command::backaction: return "fit amplifier isolation from thermal photons versus gain (params.input)";
    }
    return {};
}

struct Flags {
    std::string config;
    std::string fixture;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
    std::size_t jobs = 1;
    bool dump_config = false;
    std::string binary_out;
};

void print_fixtures(const std::string &name, std::ostream &out) {
    if (!name.empty()) {
        out << find_fixture(name).value.dump(2) << '\n';
        return;
    }
    for (const std::string &n : list_fixtures()) {
        const Document doc = find_fixture(n);
        out << n;
        if (doc.value.contains("description")) out << "  " << doc.value.at("description").get<std::string>();
        out << '\n';
    }
}

void write_artifact(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
        throw ConfigError(path + ": cannot write output");
    }
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Two-mode squeezed readout modeling: analytic metrics, shot simulation and calibration fits", "tmsr"};
    app.set_version_flag("--version", tool_banner());
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    auto *o_config = app.add_option("--config", flags.config, "JSON config file");
    auto *o_fixture = app.add_option("--fixture", flags.fixture, "named parameter set, or 'none'");
    auto *o_seed = app.add_option("--seed", flags.seed, "RNG seed (u64)");
    app.add_option("--out", flags.out, "output file (default stdout)");
    auto *o_format = app.add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--jobs", flags.jobs, "worker threads, 0 = all cores")->default_val(1);
    app.add_flag("--dump-config", flags.dump_config, "print the resolved config and exit");
    app.add_option("--binary-out", flags.binary_out, "simulate: also write shots in binary form");

    std::vector<std::pair<CLI::App *, Command>> subcommands;
    for (const Command c : kCommands) {
        subcommands.emplace_back(app.add_subcommand(std::string(to_string(c)), std::string(describe(c))), c);
    }
    std::string fixture_name;
    CLI::App *fixtures_cmd = app.add_subcommand("fixtures", "list fixtures, or print one by name; extra fixtures are "
                                                            "read from $" + std::string(kFixtureDirEnv));
    fixtures_cmd->add_option("name", fixture_name, "fixture to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        std::ostringstream cli_out;
        const int code = app.exit(e, cli_out, err);
        out << cli_out.str();
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (fixtures_cmd->parsed()) {
            print_fixtures(fixture_name, out);
            return kExitOk;
        }
        Command command = Command::analytic;
        for (const auto &[sub, c] : subcommands) {
            if (sub->parsed()) command = c;
        }

        std::optional<Document> file;
        if (*o_config) file = load_document(flags.config);
        Overrides overrides;
        if (*o_fixture) overrides.fixture = flags.fixture;
        if (*o_seed) overrides.seed = flags.seed;
        if (*o_format) overrides.format = flags.format;
        const ResolvedConfig config = resolve(command, file ? &*file : nullptr, overrides, &find_fixture);

        if (flags.dump_config) {
            write_artifact(flags.out, config.to_json().dump(2) + "\n", out);
            return kExitOk;
        }

        RunOptions options;
        options.jobs = flags.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : flags.jobs;
        if (!flags.binary_out.empty()) options.binary_out = flags.binary_out;

        // Buffer the artifact so a failed run never leaves a partial file.
        std::ostringstream artifact;
        run_command(config, options, artifact, err);
        write_artifact(flags.out, artifact.str(), out);
        return kExitOk;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const QuantityError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const tmsr::Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace tmsr::app
