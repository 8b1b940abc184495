#include "impactsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "impactsim/metrics.hpp"

namespace impactsim {

namespace {

// Calls fn(i) for every i in [0, count); results must be written to
// index-addressed slots so the outcome is independent of scheduling.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    const auto threads = static_cast<std::size_t>(std::max(1, workers));
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(threads, count); ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::uint64_t canonical_bits(double x) {
    return std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x);
}

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

// One world of a sweep plus the offset of its cells in the output.
struct WorldJob {
    ModelParams params;
    std::size_t first_cell = 0;
};

}  // namespace

std::string_view indicator_name(IndicatorKind kind) {
    switch (kind) {
        case IndicatorKind::citations: return "citations";
        case IndicatorKind::impact_factor: return "if";
        case IndicatorKind::hybrid: return "hybrid";
    }
    return "unknown";
}

IndicatorKind parse_indicator_kind(std::string_view name) {
    for (auto kind : {IndicatorKind::citations, IndicatorKind::impact_factor, IndicatorKind::hybrid}) {
        if (indicator_name(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown indicator '" + std::string(name) +
                                "' (expected citations, if or hybrid)");
}

std::vector<double> indicator_scores(const SimulationOutcome& outcome, const Indicator& indicator) {
    switch (indicator.kind) {
        case IndicatorKind::citations: return citation_scores(outcome);
        case IndicatorKind::impact_factor: return if_scores(outcome);
        case IndicatorKind::hybrid: return hybrid_scores(outcome, indicator.weight_if);
    }
    throw std::logic_error("unhandled indicator kind");
}

std::uint64_t cell_tag(double sigma_r2, double sigma_c2, int m) {
    std::uint64_t h = mix64(canonical_bits(sigma_r2));
    h = mix64(h ^ canonical_bits(sigma_c2));
    return mix64(h ^ static_cast<std::uint64_t>(m));
}

std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t tag, std::uint64_t run_index) {
    return substream_seed(master_seed, tag ^ run_index);
}

MeanStderr summarize(std::span<const double> samples) {
    MeanStderr out;
    if (samples.empty()) return out;
    double sum = 0.0;
    for (double x : samples) sum += x;
    const auto count = static_cast<double>(samples.size());
    out.mean = sum / count;
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double x : samples) ss += (x - out.mean) * (x - out.mean);
        out.standard_error = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
    }
    return out;
}

MeanStderr paired_difference(const SweepCell& a, const SweepCell& b) {
    require(a.sigma_r2 == b.sigma_r2 && a.sigma_c2 == b.sigma_c2 && a.m == b.m && a.n == b.n &&
                a.master_seed == b.master_seed && a.runs == b.runs &&
                a.run_accuracies.size() == b.run_accuracies.size(),
            "paired_difference needs two cells over the same worlds");
    std::vector<double> diff(a.run_accuracies.size());
    for (std::size_t r = 0; r < diff.size(); ++r) diff[r] = a.run_accuracies[r] - b.run_accuracies[r];
    return summarize(diff);
}

MeanStderr independent_difference(const SweepCell& a, const SweepCell& b) {
    return {a.accuracy_mean - b.accuracy_mean,
            std::hypot(a.accuracy_stderr, b.accuracy_stderr)};
}

namespace {

// Fills cells[first, first + indicators.size()) with the per-run accuracies of
// run `run` of a world. run_accuracies must already be sized.
void score_run(const ModelParams& world, std::uint64_t master_seed, std::uint64_t tag, int run,
               std::span<const Indicator> indicators, const AccuracySpec& accuracy,
               std::span<SweepCell> cells) {
    ModelParams params = world;
    params.seed = run_seed(master_seed, tag, static_cast<std::uint64_t>(run));
    const SimulationOutcome outcome = run_simulation(params);
    const std::vector<double> values = article_values(outcome);
    const std::vector<int> high = high_value_set(values, accuracy);
    for (std::size_t i = 0; i < indicators.size(); ++i) {
        const std::vector<double> scores = indicator_scores(outcome, indicators[i]);
        cells[i].run_accuracies[static_cast<std::size_t>(run)] = selection_accuracy(scores, high);
    }
}

SweepCell make_cell(const ModelParams& world, int runs, const Indicator& indicator, double alpha,
                    std::uint64_t master_seed) {
    SweepCell cell;
    cell.sigma_r2 = world.sigma_r2;
    cell.sigma_c2 = world.sigma_c2;
    cell.sigma_v2 = world.sigma_v2;
    cell.m = world.m;
    cell.n = world.n;
    cell.alpha = alpha;
    cell.indicator = indicator;
    cell.runs = runs;
    cell.master_seed = master_seed;
    cell.run_accuracies.assign(static_cast<std::size_t>(runs), 0.0);
    return cell;
}

void finish_cell(SweepCell& cell) {
    const MeanStderr s = summarize(cell.run_accuracies);
    cell.accuracy_mean = s.mean;
    cell.accuracy_stderr = s.standard_error;
}

void check_indicator(const Indicator& indicator) {
    require(indicator.weight_if >= 0.0 && indicator.weight_if <= 1.0,
            "weight_if must lie in [0, 1], got " + std::to_string(indicator.weight_if));
}

// Shared core of evaluate_world and run_sweep: every (world, run) pair is a
// work unit.
void evaluate_jobs(std::span<const WorldJob> jobs, int runs, std::span<const Indicator> indicators,
                   const AccuracySpec& accuracy, std::uint64_t master_seed, int workers,
                   std::vector<SweepCell>& cells) {
    std::vector<std::uint64_t> tags;
    tags.reserve(jobs.size());
    for (const WorldJob& job : jobs) {
        tags.push_back(cell_tag(job.params.sigma_r2, job.params.sigma_c2, job.params.m));
    }
    const auto per_world = static_cast<std::size_t>(runs);
    parallel_for(jobs.size() * per_world, workers, [&](std::size_t unit) {
        const std::size_t w = unit / per_world;
        const int run = static_cast<int>(unit % per_world);
        std::span<SweepCell> slots(cells.data() + jobs[w].first_cell, indicators.size());
        score_run(jobs[w].params, master_seed, tags[w], run, indicators, accuracy, slots);
    });
    for (SweepCell& cell : cells) finish_cell(cell);
}

}  // namespace

std::vector<SweepCell> evaluate_world(const ModelParams& world, int runs,
                                      std::span<const Indicator> indicators, double alpha,
                                      std::uint64_t master_seed, int workers) {
    validate(world);
    require(runs >= 1, "runs must be >= 1");
    require(!indicators.empty(), "at least one indicator is required");
    for (const Indicator& indicator : indicators) check_indicator(indicator);
    const AccuracySpec accuracy{alpha};
    accuracy.selection_size(static_cast<std::size_t>(world.n));

    std::vector<SweepCell> cells;
    for (const Indicator& indicator : indicators) {
        cells.push_back(make_cell(world, runs, indicator, alpha, master_seed));
    }
    const WorldJob job{world, 0};
    evaluate_jobs({&job, 1}, runs, indicators, accuracy, master_seed, workers, cells);
    return cells;
}

SweepCell run_replicated(const ModelParams& world, int runs, const Indicator& indicator,
                         double alpha, std::uint64_t master_seed, int workers) {
    return evaluate_world(world, runs, {&indicator, 1}, alpha, master_seed, workers).front();
}

void validate(const SweepSpec& spec) {
    require(spec.n >= 1, "sweep.n must be >= 1");
    require(spec.runs >= 1, "sweep.runs must be >= 1");
    require(spec.alpha > 0.0 && spec.alpha < 1.0, "sweep.alpha must lie in (0, 1)");
    AccuracySpec{spec.alpha}.selection_size(static_cast<std::size_t>(spec.n));
    require(std::isfinite(spec.total_log_variance) && spec.total_log_variance >= 0.0,
            "sweep.total_log_variance must be finite and >= 0");
    require(!spec.sigma_r2_list.empty(), "sweep.sigma_r2_list must not be empty");
    require(!spec.sigma_c2_grid.empty(), "sweep.sigma_c2_grid must not be empty");
    require(!spec.m_list.empty(), "sweep.m_list must not be empty");
    require(!spec.indicators.empty(), "sweep.indicators must not be empty");
    for (double s : spec.sigma_r2_list) {
        require(std::isfinite(s) && s >= 0.0, "sweep.sigma_r2_list entries must be >= 0");
    }
    for (double s : spec.sigma_c2_grid) {
        require(std::isfinite(s) && s >= 0.0 && s <= spec.total_log_variance,
                "sweep.sigma_c2_grid entries must lie in [0, total_log_variance], got " +
                    std::to_string(s));
    }
    for (int m : spec.m_list) {
        require(m >= 1 && spec.n % m == 0, "sweep.m_list entry " + std::to_string(m) +
                                               " must divide n=" + std::to_string(spec.n));
    }
    const bool hybrid = std::ranges::find(spec.indicators, IndicatorKind::hybrid) != spec.indicators.end();
    if (hybrid) require(!spec.weight_if_list.empty(), "sweep.weight_if_list must not be empty");
    for (double w : spec.weight_if_list) {
        require(w >= 0.0 && w <= 1.0, "sweep.weight_if_list entries must lie in [0, 1]");
    }
}

std::vector<double> default_sigma_c2_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 26; ++i) grid.push_back(i / 20.0);
    return grid;
}

SweepSpec figure1_preset() {
    SweepSpec spec;
    spec.sigma_r2_list = {0.0, 0.4, 0.8, 1.6};
    spec.sigma_c2_grid = default_sigma_c2_grid();
    spec.m_list = {20};
    spec.weight_if_list = {0.0, 0.25, 0.5, 0.75, 1.0};
    spec.indicators = {IndicatorKind::impact_factor, IndicatorKind::citations};
    return spec;
}

SweepSpec figure2_preset() {
    SweepSpec spec = figure1_preset();
    spec.sigma_r2_list = {0.4};
    spec.m_list = {10, 40};
    return spec;
}

SweepSpec figure3_preset() {
    SweepSpec spec = figure1_preset();
    spec.sigma_r2_list = {0.4};
    spec.indicators = {IndicatorKind::hybrid};
    return spec;
}

std::vector<Indicator> expand_indicators(const SweepSpec& spec) {
    std::vector<Indicator> out;
    for (IndicatorKind kind : spec.indicators) {
        switch (kind) {
            case IndicatorKind::citations: out.push_back(Indicator::citations()); break;
            case IndicatorKind::impact_factor: out.push_back(Indicator::impact_factor()); break;
            case IndicatorKind::hybrid:
                for (double w : spec.weight_if_list) out.push_back(Indicator::hybrid(w));
                break;
        }
    }
    return out;
}

std::vector<SweepCell> run_sweep(const SweepSpec& spec, int workers) {
    validate(spec);
    const std::vector<Indicator> indicators = expand_indicators(spec);
    const AccuracySpec accuracy{spec.alpha};

    std::vector<WorldJob> jobs;
    std::vector<SweepCell> cells;
    for (double sigma_r2 : spec.sigma_r2_list) {
        for (int m : spec.m_list) {
            for (double sigma_c2 : spec.sigma_c2_grid) {
                ModelParams world;
                world.n = spec.n;
                world.m = m;
                world.sigma_r2 = sigma_r2;
                world.sigma_c2 = sigma_c2;
                world.sigma_v2 = spec.total_log_variance - sigma_c2;
                validate(world);
                jobs.push_back({world, cells.size()});
                for (const Indicator& indicator : indicators) {
                    cells.push_back(make_cell(world, spec.runs, indicator, spec.alpha, spec.master_seed));
                }
            }
        }
    }
    evaluate_jobs(jobs, spec.runs, indicators, accuracy, spec.master_seed, workers, cells);
    return cells;
}

std::vector<SweepCell> sweep_figure1(SweepSpec spec, int workers) {
    spec.indicators = {IndicatorKind::impact_factor, IndicatorKind::citations};
    return run_sweep(spec, workers);
}

std::vector<SweepCell> sweep_figure2(SweepSpec spec, int workers) {
    spec.indicators = {IndicatorKind::impact_factor, IndicatorKind::citations};
    return run_sweep(spec, workers);
}

std::vector<SweepCell> sweep_figure3(SweepSpec spec, int workers) {
    spec.indicators = {IndicatorKind::hybrid};
    return run_sweep(spec, workers);
}

}  // namespace impactsim
