#pragma once

#include <span>
#include <vector>

#include "impactsim/simulation.hpp"

namespace impactsim {

/// Share alpha of the articles that count as high value.
struct AccuracySpec {
    double alpha = 0.1;

    /// round(alpha * n), half-up. Throws std::invalid_argument if alpha is
    /// outside (0, 1) or the count would be 0.
    std::size_t selection_size(std::size_t n) const;
};

/// Ids of the k highest scores, ties to the lower id, returned in ascending
/// id order. Throws std::out_of_range unless 1 <= k <= scores.size().
std::vector<int> top_k_indices(std::span<const double> scores, std::size_t k);

/// The round(alpha * n) articles with the highest true value.
std::vector<int> high_value_set(std::span<const double> values, const AccuracySpec& spec);

/// Percentage (0-100) of the top-scored articles that are also high value.
double selection_accuracy(std::span<const double> scores, std::span<const double> values,
                          const AccuracySpec& spec);

/// Same measure against a precomputed high-value set (ascending ids).
double selection_accuracy(std::span<const double> scores, std::span<const int> high_value);

std::vector<double> citation_scores(const SimulationOutcome& outcome);
std::vector<double> if_scores(const SimulationOutcome& outcome);

/// weight_if * IF + (1 - weight_if) * citations, per article.
std::vector<double> hybrid_scores(const SimulationOutcome& outcome, double weight_if);

std::vector<double> article_values(const SimulationOutcome& outcome);

}  // namespace impactsim
