// impactsim: command-line driver for the journal/citation simulator.
//
//   impactsim simulate --config F [--seed S] [--out PATH]
//   impactsim sweep --preset {fig1|fig2|fig3|custom} [--config F] [--runs R] [--out PATH] [--workers W]
//   impactsim scenario {1|2|custom} [--config F] [--out PATH]
//
// Exit codes: 0 success, 1 invalid configuration, 2 I/O failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "impactsim/config.hpp"
#include "impactsim/experiments.hpp"
#include "impactsim/report.hpp"
#include "impactsim/simulation.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw impactsim::IoError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

impactsim::KeyValues parse_set_flags(const std::vector<std::string>& sets) {
    impactsim::KeyValues out;
    for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw impactsim::ConfigError(s, "--set expects key=value");
        out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return out;
}

void deliver(const impactsim::RunConfig& config, const std::string& content) {
    if (config.output_path.empty()) {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw impactsim::IoError("failed writing to stdout");
    } else {
        impactsim::write_file_atomically(config.output_path, content);
    }
}

std::string execute(const impactsim::RunConfig& config) {
    std::ostringstream out;
    switch (config.command) {
        case impactsim::Command::simulate:
            impactsim::emit_simulation_csv(impactsim::run_simulation(config.model), out);
            break;
        case impactsim::Command::sweep: {
            const auto cells = impactsim::run_sweep(config.sweep, config.workers);
            impactsim::emit_sweep_csv(cells, out);
            break;
        }
        case impactsim::Command::scenario:
            impactsim::emit_scenario_report(
                impactsim::evaluate_scenario(config.scenario, config.scenario_select), out);
            break;
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo comparison of journal impact factors and article citations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::vector<std::string> sets;

    auto* simulate = app.add_subcommand("simulate", "one simulation run, per-article CSV");
    std::string seed;
    simulate->add_option("--config", config_path, "config file")->required();
    simulate->add_option("--seed", seed, "override model.seed");
    simulate->add_option("--out", out_path, "output CSV (default stdout)");
    simulate->add_option("--set", sets, "override any key: key=value");

    auto* sweep = app.add_subcommand("sweep", "replicated accuracy sweep, CSV");
    std::string preset;
    std::string runs;
    std::string workers;
    sweep->add_option("--preset", preset, "fig1, fig2, fig3 or custom")->required();
    sweep->add_option("--config", config_path, "config file");
    sweep->add_option("--runs", runs, "override sweep.runs");
    sweep->add_option("--out", out_path, "output CSV (default stdout)");
    sweep->add_option("--workers", workers, "worker threads (default $INDICATOR_SIM_WORKERS or 1)");
    sweep->add_option("--set", sets, "override any key: key=value");

    auto* scenario = app.add_subcommand("scenario", "exact two-level scenario tables");
    std::string which;
    scenario->add_option("which", which, "1, 2 or custom")->required();
    scenario->add_option("--config", config_path, "config file");
    scenario->add_option("--out", out_path, "output report (default stdout)");
    scenario->add_option("--set", sets, "override any key: key=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        impactsim::Command command = impactsim::Command::sweep;
        std::string preset_text = preset;
        if (simulate->parsed()) {
            command = impactsim::Command::simulate;
            preset_text = "custom";
        } else if (scenario->parsed()) {
            command = impactsim::Command::scenario;
            preset_text = which;
            if (which == "custom" && config_path.empty()) {
                throw impactsim::ConfigError("config", "scenario custom requires --config");
            }
        }
        const impactsim::Preset p = impactsim::parse_preset(command, preset_text);

        impactsim::KeyValues flags = parse_set_flags(sets);
        if (!seed.empty()) flags.emplace_back("model.seed", seed);
        if (!runs.empty()) flags.emplace_back("sweep.runs", runs);
        if (!workers.empty()) flags.emplace_back("run.workers", workers);
        if (!out_path.empty()) flags.emplace_back("output.path", out_path);

        std::optional<std::string> env_workers;
        if (const char* env = std::getenv("INDICATOR_SIM_WORKERS"); env && *env) env_workers = env;

        const std::string file_text = config_path.empty() ? std::string() : read_file(config_path);
        const impactsim::RunConfig config = impactsim::parse_config(command, p, file_text, flags, env_workers);
        deliver(config, execute(config));
        return 0;
    } catch (const impactsim::IoError& e) {
        std::cerr << "impactsim: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "impactsim: " << e.what() << "\n";
        return kExitValidation;
    }
}
