#include "impactsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace impactsim {

std::size_t AccuracySpec::selection_size(std::size_t n) const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    const double k = std::floor(alpha * static_cast<double>(n) + 0.5);
    if (k < 1.0) {
        throw std::invalid_argument("round(alpha * n) is 0 for alpha=" + std::to_string(alpha) +
                                    ", n=" + std::to_string(n));
    }
    return static_cast<std::size_t>(k);
}

std::vector<int> top_k_indices(std::span<const double> scores, std::size_t k) {
    if (k < 1 || k > scores.size()) {
        throw std::out_of_range("k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(scores.size()) + "]");
    }
    if (!std::ranges::all_of(scores, [](double s) { return std::isfinite(s); })) {
        throw std::invalid_argument("scores must be finite");
    }
    std::vector<int> ids(scores.size());
    std::iota(ids.begin(), ids.end(), 0);
    auto ranks_before = [&](int a, int b) {
        const double sa = scores[static_cast<std::size_t>(a)];
        const double sb = scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;
    };
    std::nth_element(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k) - 1, ids.end(),
                     ranks_before);
    ids.resize(k);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<int> high_value_set(std::span<const double> values, const AccuracySpec& spec) {
    for (double v : values) {
        if (!(v > 0.0)) throw std::invalid_argument("article values must be positive");
    }
    return top_k_indices(values, spec.selection_size(values.size()));
}

double selection_accuracy(std::span<const double> scores, std::span<const int> high_value) {
    const std::vector<int> selected = top_k_indices(scores, high_value.size());
    std::vector<int> both;
    std::set_intersection(selected.begin(), selected.end(), high_value.begin(), high_value.end(),
                          std::back_inserter(both));
    return 100.0 * static_cast<double>(both.size()) / static_cast<double>(high_value.size());
}

double selection_accuracy(std::span<const double> scores, std::span<const double> values,
                          const AccuracySpec& spec) {
    if (scores.size() != values.size()) {
        throw std::invalid_argument("scores and values differ in length (" +
                                    std::to_string(scores.size()) + " vs " +
                                    std::to_string(values.size()) + ")");
    }
    const std::vector<int> high = high_value_set(values, spec);
    return selection_accuracy(scores, high);
}

std::vector<double> citation_scores(const SimulationOutcome& outcome) {
    std::vector<double> scores(outcome.articles.size());
    for (const Article& a : outcome.articles) scores.at(static_cast<std::size_t>(a.id)) = a.citations;
    return scores;
}

std::vector<double> if_scores(const SimulationOutcome& outcome) {
    std::vector<double> scores(outcome.articles.size());
    for (const Article& a : outcome.articles) {
        scores.at(static_cast<std::size_t>(a.id)) =
            outcome.impact_factors.at(static_cast<std::size_t>(a.journal - 1));
    }
    return scores;
}

std::vector<double> hybrid_scores(const SimulationOutcome& outcome, double weight_if) {
    if (!(weight_if >= 0.0 && weight_if <= 1.0)) {
        throw std::invalid_argument("weight_if must lie in [0, 1], got " + std::to_string(weight_if));
    }
    std::vector<double> scores(outcome.articles.size());
    for (const Article& a : outcome.articles) {
        const double impact = outcome.impact_factors.at(static_cast<std::size_t>(a.journal - 1));
        scores.at(static_cast<std::size_t>(a.id)) =
            weight_if * impact + (1.0 - weight_if) * a.citations;
    }
    return scores;
}

std::vector<double> article_values(const SimulationOutcome& outcome) {
    std::vector<double> values(outcome.articles.size());
    for (const Article& a : outcome.articles) values.at(static_cast<std::size_t>(a.id)) = a.value;
    return values;
}

}  // namespace impactsim
