#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "impactsim/rng.hpp"

namespace impactsim {

/// Parameters of one simulated field: n articles spread over m equally sized
/// journals, with three lognormal log-variances.
struct ModelParams {
    int n = 2000;
    int m = 20;
    double sigma_v2 = 0.65;  ///< spread of true article values
    double sigma_c2 = 0.65;  ///< citation noise
    double sigma_r2 = 0.4;   ///< peer-review noise
    std::uint64_t seed = 0;

    int journal_size() const { return n / m; }
    bool operator==(const ModelParams&) const = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ModelParams& params);

struct Article {
    int id = 0;
    double value = 1.0;
    double citations = 1.0;  ///< non-integral by construction
    int journal = 1;         ///< 1-based; journal 1 is the most prestigious

    bool operator==(const Article&) const = default;
};

struct SimulationOutcome {
    std::vector<Article> articles;       ///< indexed by article id
    std::vector<double> impact_factors;  ///< impact_factors[k-1] is journal k

    bool operator==(const SimulationOutcome&) const = default;
};

/// n unit-mean lognormal values with log-variance sigma_v2, drawn in id order.
std::vector<double> sample_values(const ModelParams& params, RngState& rng);

/**
 * Routes every article through the prestige-ordered review cascade and
 * returns the 1-based journal of each article id.
 *
 * Journal k (k < m) draws a fresh review-noise factor for every article it
 * receives, in ascending id order, and keeps the n/m articles with the
 * highest value * noise (ties go to the lower id). Journal m takes what is
 * left without drawing any noise, so m = 1 consumes no draws.
 */
std::vector<int> assign_journals(std::span<const double> values, const ModelParams& params,
                                 RngState& rng);

/// c_i = v_i * eps_i, eps_i unit-mean lognormal with log-variance sigma_c2.
std::vector<double> sample_citations(std::span<const double> values, const ModelParams& params,
                                     RngState& rng);

/// Mean citations per journal, summed in ascending id order. Throws
/// std::logic_error if a journal in [1, m] has no articles or an article
/// carries a journal outside that range.
std::vector<double> compute_impact_factors(std::span<const Article> articles, int m);

/// values -> journals -> citations -> impact factors, one RngState seeded by
/// params.seed.
SimulationOutcome run_simulation(const ModelParams& params);

}  // namespace impactsim
