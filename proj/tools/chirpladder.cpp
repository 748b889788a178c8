#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chirpladder/config.hpp"
#include "chirpladder/errors.hpp"
#include "chirpladder/runner.hpp"

namespace cli = chirpladder::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitTolerance = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string config;
    std::string preset;
    std::vector<std::string> overrides;
    std::string out;
    std::string format;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "YAML run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--preset", o.preset, "start from a named preset (see 'presets list')");
    cmd->add_option("--set", o.overrides, "override one key, section.key=value (repeatable)");
    cmd->add_option("--out", o.out, "output file; standard output when empty");
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

cli::RunConfig build_config(const CommonOptions& o) {
    cli::RunConfig cfg;
    if (!o.preset.empty())
        cfg = cli::expand_preset(o.preset);
    if (!o.config.empty())
        cfg = cli::load_config(o.config, cfg);
    std::vector<std::string> all = o.overrides;
    if (!o.out.empty())
        all.push_back("output.path=" + o.out);
    if (!o.format.empty())
        all.push_back("output.format=" + o.format);
    for (const std::string& s : all) {
        const std::string previous = cli::apply_override(cfg, s);
        std::cerr << "override " << s.substr(0, s.find('=')) << ": " << previous << " -> "
                  << s.substr(s.find('=') + 1) << " (command line)\n";
    }
    return cfg;
}

void emit(const cli::RunConfig& cfg, const std::string& text) {
    const std::string path = cli::resolve_output_path(cfg.output.path);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw chirpladder::ConfigError("output.path", "cannot write " + path, cfg.line_of("output.path"));
    f << text;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings)
        std::cerr << "warning: " << w << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon excitation of a ladder system by a chirped Gaussian pulse"};
    app.set_version_flag("--version", CHIRPLADDER_VERSION);
    app.require_subcommand(1);

    CommonOptions sweep_opts, weights_opts, compare_opts;
    double tolerance = 0.0;

    CLI::App* sweep = app.add_subcommand("sweep", "amplitude and population along a chirp sweep");
    add_common(sweep, sweep_opts);
    CLI::App* weights = app.add_subcommand("weights", "per-level exact and approximate weights at one chirp");
    add_common(weights, weights_opts);
    CLI::App* compare = app.add_subcommand("oracle-compare", "relative discrepancies against the exact amplitude");
    add_common(compare, compare_opts);
    CLI::Option* tol_opt = compare->add_option("--tolerance", tolerance, "tolerance for every compared method");
    CLI::App* presets = app.add_subcommand("presets", "preset configurations");
    presets->require_subcommand(1);
    CLI::App* presets_list = presets->add_subcommand("list", "list presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*presets_list) {
            for (const cli::PresetInfo& p : cli::presets())
                std::printf("%-12s %s\n", std::string(p.name).c_str(), std::string(p.summary).c_str());
            return kExitOk;
        }
        if (*sweep) {
            const cli::RunConfig cfg = build_config(sweep_opts);
            const cli::SweepTable table = cli::run_sweep(cfg);
            print_warnings(table.warnings);
            std::ostringstream out;
            cli::write_sweep(out, table, cfg);
            emit(cfg, out.str());
            return kExitOk;
        }
        if (*weights) {
            const cli::RunConfig cfg = build_config(weights_opts);
            std::ostringstream out;
            cli::write_weights(out, cli::run_weights(cfg), cfg);
            emit(cfg, out.str());
            return kExitOk;
        }
        if (*compare) {
            const cli::RunConfig cfg = build_config(compare_opts);
            std::optional<double> tol;
            if (*tol_opt) {
                if (!(tolerance > 0.0))
                    throw chirpladder::ConfigError("--tolerance", "must be > 0");
                tol = tolerance;
            }
            const cli::ComparisonReport report = cli::oracle_compare(cfg, tol);
            print_warnings(report.warnings);
            std::ostringstream out;
            cli::write_comparison(out, report, cfg);
            emit(cfg, out.str());
            std::cerr << cli::summary_text(report);
            return report.breached() ? kExitTolerance : kExitOk;
        }
    } catch (const chirpladder::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const chirpladder::DegenerateManifold& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
