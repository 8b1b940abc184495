#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "impactsim/experiments.hpp"
#include "impactsim/scenario.hpp"
#include "impactsim/simulation.hpp"

namespace impactsim {

/// Output could not be written; the CLI maps it to exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bumped whenever the sweep CSV column set or order changes.
inline constexpr int kSweepSchemaVersion = 1;

/// "%.6f" with '.' as separator; -0 prints as 0.000000.
std::string format_fixed6(double v);

/**
 * Sweep CSV: header row, then one row per cell sorted by
 * (sigma_r2, m, indicator name, weight_if, sigma_c2). Columns:
 *
 *   schema_version,sigma_r2,sigma_c2,sigma_v2,m,n,alpha,indicator,
 *   weight_if,runs,accuracy_mean,accuracy_stderr,master_seed
 *
 * Reals use format_fixed6; lines end in '\n'. Throws std::invalid_argument
 * for an empty cell list.
 */
void emit_sweep_csv(std::span<const SweepCell> cells, std::ostream& out);

/// Per-article dump: article_id,journal,value,citations with values printed
/// to 17 significant digits.
void emit_simulation_csv(const SimulationOutcome& outcome, std::ostream& out);

struct ScenarioResults {
    scenario::DiscreteScenario scenario;
    scenario::ScenarioBreakdown breakdown;
    std::int64_t select_count = 0;
    scenario::Rational if_accuracy;
    scenario::Rational citation_accuracy;
};

/// select_count 0 means the size of the top IF-ranked journal.
ScenarioResults evaluate_scenario(const scenario::DiscreteScenario& s, std::int64_t select_count = 0);

/// Plain-text tables: citedness probabilities, per-journal breakdowns, then
/// the closing line "IF selection: X%  citation selection: Y%".
void emit_scenario_report(const ScenarioResults& results, std::ostream& out);

/// Writes `content` to `path` through a sibling temporary file and a
/// rename, so a failed write leaves no partial file. Throws IoError.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace impactsim
