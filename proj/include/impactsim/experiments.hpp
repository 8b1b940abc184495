#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "impactsim/simulation.hpp"

namespace impactsim {

enum class IndicatorKind { citations, impact_factor, hybrid };

/// How an article is scored for selection. weight_if is only meaningful for
/// hybrid; the pure kinds report 0 (citations) and 1 (impact factor).
struct Indicator {
    IndicatorKind kind = IndicatorKind::citations;
    double weight_if = 0.0;

    static Indicator citations() { return {IndicatorKind::citations, 0.0}; }
    static Indicator impact_factor() { return {IndicatorKind::impact_factor, 1.0}; }
    static Indicator hybrid(double weight_if) { return {IndicatorKind::hybrid, weight_if}; }

    bool operator==(const Indicator&) const = default;
};

/// "citations", "if" or "hybrid".
std::string_view indicator_name(IndicatorKind kind);
/// Inverse of indicator_name; throws std::invalid_argument.
IndicatorKind parse_indicator_kind(std::string_view name);

std::vector<double> indicator_scores(const SimulationOutcome& outcome, const Indicator& indicator);

/**
 * Stable identifier of a simulated world: mixes the bit patterns of
 * sigma_r2 and sigma_c2 (with -0.0 folded into 0.0) and m through mix64.
 * The indicator is deliberately not part of the tag, so every indicator is
 * scored on the same worlds.
 */
std::uint64_t cell_tag(double sigma_r2, double sigma_c2, int m);

/// Seed of run `run_index` of a world: substream_seed(master_seed, tag ^ run_index).
std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t tag, std::uint64_t run_index);

/// Aggregated accuracy of one indicator over replicated runs of one world.
struct SweepCell {
    double sigma_r2 = 0.0;
    double sigma_c2 = 0.0;
    double sigma_v2 = 0.0;
    int m = 0;
    int n = 0;
    double alpha = 0.0;
    Indicator indicator;
    int runs = 0;
    double accuracy_mean = 0.0;
    double accuracy_stderr = 0.0;
    std::uint64_t master_seed = 0;
    std::vector<double> run_accuracies;  ///< in run_index order

    bool operator==(const SweepCell&) const = default;
};

/**
 * Runs `runs` replicates of the world described by `world` (its seed field
 * is ignored) and scores each replicate with every indicator in
 * `indicators`. Replicate r is seeded with
 * run_seed(master_seed, cell_tag(sigma_r2, sigma_c2, m), r). Returns one
 * cell per indicator, in the given order. Runs may be spread over `workers`
 * threads; the result does not depend on the worker count.
 */
std::vector<SweepCell> evaluate_world(const ModelParams& world, int runs,
                                      std::span<const Indicator> indicators, double alpha,
                                      std::uint64_t master_seed, int workers = 1);

/// Single-indicator form of evaluate_world.
SweepCell run_replicated(const ModelParams& world, int runs, const Indicator& indicator,
                         double alpha, std::uint64_t master_seed, int workers = 1);

/// Mean and standard error (sample sd / sqrt(runs)) in run order.
struct MeanStderr {
    double mean = 0.0;
    double standard_error = 0.0;
};
MeanStderr summarize(std::span<const double> samples);

/// Difference a - b over the same simulated worlds: mean of per-run
/// differences and its standard error. Throws std::invalid_argument when
/// the cells were not run on identical worlds.
MeanStderr paired_difference(const SweepCell& a, const SweepCell& b);

/// Difference a - b for independent cells: sqrt(se_a^2 + se_b^2).
MeanStderr independent_difference(const SweepCell& a, const SweepCell& b);

/// A grid of experiment configurations.
struct SweepSpec {
    std::vector<double> sigma_r2_list;
    std::vector<double> sigma_c2_grid;
    std::vector<int> m_list;
    std::vector<double> weight_if_list;
    std::vector<IndicatorKind> indicators;  ///< hybrid expands over weight_if_list
    int runs = 1000;
    int n = 2000;
    double alpha = 0.1;
    double total_log_variance = 1.3;
    std::uint64_t master_seed = 42;

    bool operator==(const SweepSpec&) const = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const SweepSpec& spec);

/// 0, 0.05, ..., 1.3 (computed as i / 20 so the last point is exactly 1.3).
std::vector<double> default_sigma_c2_grid();

SweepSpec figure1_preset();  ///< sigma_r2 in {0, 0.4, 0.8, 1.6}, m = 20, IF vs citations
SweepSpec figure2_preset();  ///< sigma_r2 = 0.4, m in {10, 40}, IF vs citations
SweepSpec figure3_preset();  ///< sigma_r2 = 0.4, m = 20, hybrid weights 0..1 by 0.25

/// Indicators a spec expands to, in spec order.
std::vector<Indicator> expand_indicators(const SweepSpec& spec);

/**
 * Every cell of sigma_r2_list x m_list x sigma_c2_grid x indicators, with
 * sigma_v2 = total_log_variance - sigma_c2. Cells come back in that nesting
 * order; all indicators of a (sigma_r2, m, sigma_c2) triple share worlds.
 */
std::vector<SweepCell> run_sweep(const SweepSpec& spec, int workers = 1);

/// run_sweep with indicators fixed to {impact factor, citations}.
std::vector<SweepCell> sweep_figure1(SweepSpec spec, int workers = 1);
std::vector<SweepCell> sweep_figure2(SweepSpec spec, int workers = 1);
/// run_sweep with indicators fixed to hybrid over weight_if_list.
std::vector<SweepCell> sweep_figure3(SweepSpec spec, int workers = 1);

}  // namespace impactsim
