#include "impactsim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace impactsim {

namespace {

void require_log_variance(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument(std::string(name) + " must be finite and >= 0, got " +
                                    std::to_string(v));
    }
}

void require_length(std::span<const double> values, const ModelParams& params) {
    if (values.size() != static_cast<std::size_t>(params.n)) {
        throw std::invalid_argument("expected " + std::to_string(params.n) + " values, got " +
                                    std::to_string(values.size()));
    }
}

}  // namespace

void validate(const ModelParams& params) {
    if (params.n < 1) throw std::invalid_argument("n must be >= 1");
    if (params.m < 1) throw std::invalid_argument("m must be >= 1");
    if (params.n % params.m != 0) {
        throw std::invalid_argument("m must divide n (n=" + std::to_string(params.n) +
                                    ", m=" + std::to_string(params.m) + ")");
    }
    require_log_variance(params.sigma_v2, "sigma_v2");
    require_log_variance(params.sigma_c2, "sigma_c2");
    require_log_variance(params.sigma_r2, "sigma_r2");
}

std::vector<double> sample_values(const ModelParams& params, RngState& rng) {
    validate(params);
    std::vector<double> values(static_cast<std::size_t>(params.n));
    for (auto& v : values) v = sample_lognormal_unit_mean(params.sigma_v2, rng);
    return values;
}

std::vector<int> assign_journals(std::span<const double> values, const ModelParams& params,
                                 RngState& rng) {
    validate(params);
    require_length(values, params);

    const auto per_journal = static_cast<std::size_t>(params.journal_size());
    std::vector<int> journal(values.size(), 0);

    struct Candidate {
        double estimate;
        int id;
    };
    std::vector<int> pending(values.size());
    for (std::size_t i = 0; i < pending.size(); ++i) pending[i] = static_cast<int>(i);
    std::vector<Candidate> received;
    received.reserve(values.size());

    for (int k = 1; k < params.m; ++k) {
        received.clear();
        for (int id : pending) {
            const double eps = sample_lognormal_unit_mean(params.sigma_r2, rng);
            received.push_back({values[static_cast<std::size_t>(id)] * eps, id});
        }
        auto ranks_before = [](const Candidate& a, const Candidate& b) {
            if (a.estimate != b.estimate) return a.estimate > b.estimate;
            return a.id < b.id;
        };
        std::nth_element(received.begin(), received.begin() + static_cast<std::ptrdiff_t>(per_journal) - 1,
                         received.end(), ranks_before);
        for (std::size_t j = 0; j < per_journal; ++j) journal[static_cast<std::size_t>(received[j].id)] = k;

        // Rejected articles move on in ascending id order.
        std::erase_if(pending, [&](int id) { return journal[static_cast<std::size_t>(id)] != 0; });
    }
    for (int id : pending) journal[static_cast<std::size_t>(id)] = params.m;
    return journal;
}

std::vector<double> sample_citations(std::span<const double> values, const ModelParams& params,
                                     RngState& rng) {
    validate(params);
    require_length(values, params);
    std::vector<double> citations(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        citations[i] = values[i] * sample_lognormal_unit_mean(params.sigma_c2, rng);
    }
    return citations;
}

std::vector<double> compute_impact_factors(std::span<const Article> articles, int m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    std::vector<double> sum(static_cast<std::size_t>(m), 0.0);
    std::vector<std::size_t> count(static_cast<std::size_t>(m), 0);
    for (const Article& a : articles) {
        if (a.journal < 1 || a.journal > m) {
            throw std::logic_error("article " + std::to_string(a.id) + " has journal " +
                                   std::to_string(a.journal) + " outside [1, " +
                                   std::to_string(m) + "]");
        }
        sum[static_cast<std::size_t>(a.journal - 1)] += a.citations;
        ++count[static_cast<std::size_t>(a.journal - 1)];
    }
    std::vector<double> impact(static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < impact.size(); ++k) {
        if (count[k] == 0) {
            throw std::logic_error("journal " + std::to_string(k + 1) + " has no articles");
        }
        impact[k] = sum[k] / static_cast<double>(count[k]);
    }
    return impact;
}

SimulationOutcome run_simulation(const ModelParams& params) {
    validate(params);
    RngState rng(params.seed);
    const std::vector<double> values = sample_values(params, rng);
    const std::vector<int> journals = assign_journals(values, params, rng);
    const std::vector<double> citations = sample_citations(values, params, rng);

    SimulationOutcome outcome;
    outcome.articles.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        outcome.articles[i] = {static_cast<int>(i), values[i], citations[i], journals[i]};
    }
    outcome.impact_factors = compute_impact_factors(outcome.articles, params.m);
    return outcome;
}

}  // namespace impactsim
