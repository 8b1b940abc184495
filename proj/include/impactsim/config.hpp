#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "impactsim/experiments.hpp"
#include "impactsim/scenario.hpp"
#include "impactsim/simulation.hpp"

namespace impactsim {

/// Configuration problem tied to one key; the CLI maps it to exit code 1.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message)
        : std::invalid_argument("config key '" + key + "': " + message), key_(std::move(key)) {}

    const std::string& key() const { return key_; }

private:
    std::string key_;
};

enum class Command { simulate, sweep, scenario };
enum class Preset { custom, fig1, fig2, fig3, scenario1, scenario2 };

std::string_view command_name(Command c);
std::string_view preset_name(Preset p);
/// Accepts fig1/fig2/fig3/custom and, for the scenario command, 1/2/custom.
Preset parse_preset(Command c, std::string_view name);

struct RunConfig {
    Command command = Command::sweep;
    Preset preset = Preset::fig1;
    ModelParams model;
    SweepSpec sweep;
    scenario::DiscreteScenario scenario;
    std::int64_t scenario_select = 0;  ///< 0 selects the top-ranked journal's size
    std::string output_path;           ///< empty writes to stdout
    int workers = 1;

    bool operator==(const RunConfig&) const = default;
};

/// Defaults for a command/preset pair before any file or flag is applied.
RunConfig preset_defaults(Command command, Preset preset);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/**
 * Parses `key = value` lines. '#' starts a comment, blank lines are
 * skipped, keys are dotted (sweep.runs). Lists are comma separated.
 * Throws ConfigError for a line without '=' or a repeated key.
 */
KeyValues parse_key_values(std::string_view text);

/**
 * Builds a fully validated RunConfig. Precedence, lowest first: preset
 * defaults, `env_workers` (the INDICATOR_SIM_WORKERS value, if set), file
 * values, `flags`. Unknown keys, malformed values and violated invariants
 * raise ConfigError naming the key.
 */
RunConfig parse_config(Command command, Preset preset, std::string_view file_text,
                       const KeyValues& flags = {},
                       const std::optional<std::string>& env_workers = std::nullopt);

/// Re-checks every invariant of the sections `config.command` uses.
void validate(const RunConfig& config);

/// Writes every key in the config format; parse_config on the result
/// (same command and preset) reproduces `config` exactly.
std::string serialize_config(const RunConfig& config);

/// Every key parse_config accepts.
const std::vector<std::string_view>& known_config_keys();

}  // namespace impactsim
