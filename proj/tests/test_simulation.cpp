#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "impactsim/simulation.hpp"

using namespace impactsim;

namespace {

// Oracle for noiseless review: stable descending sort of values, cut into
// consecutive blocks of n/m.
std::vector<int> blocked_descending_sort(const std::vector<double>& values, int m) {
    std::vector<int> ids(values.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return values[a] > values[b]; });
    const std::size_t per = values.size() / static_cast<std::size_t>(m);
    std::vector<int> journal(values.size());
    for (std::size_t rank = 0; rank < ids.size(); ++rank) journal[ids[rank]] = static_cast<int>(rank / per) + 1;
    return journal;
}

ModelParams params(int n, int m, double v, double c, double r, std::uint64_t seed = 1) {
    ModelParams p;
    p.n = n;
    p.m = m;
    p.sigma_v2 = v;
    p.sigma_c2 = c;
    p.sigma_r2 = r;
    p.seed = seed;
    return p;
}

}  // namespace

TEST_CASE("params validation") {
    CHECK_NOTHROW(validate(params(2000, 20, 0.65, 0.65, 0.4)));
    CHECK_THROWS_AS(validate(params(2000, 3, 0.65, 0.65, 0.4)), std::invalid_argument);
    CHECK_THROWS_AS(validate(params(0, 1, 0.65, 0.65, 0.4)), std::invalid_argument);
    CHECK_THROWS_AS(validate(params(10, 0, 0.65, 0.65, 0.4)), std::invalid_argument);
    CHECK_THROWS_AS(validate(params(10, 2, -1, 0.65, 0.4)), std::invalid_argument);
    CHECK_THROWS_AS(validate(params(10, 2, 0.1, -0.1, 0.4)), std::invalid_argument);
    CHECK_THROWS_AS(validate(params(10, 2, 0.1, 0.1, -0.4)), std::invalid_argument);
}

TEST_CASE("sample_values") {
    SUBCASE("zero variance gives ones") {
        RngState rng(4);
        for (double v : sample_values(params(100, 10, 0.0, 0.5, 0.5), rng)) REQUIRE(v == 1.0);
    }
    SUBCASE("mean of 2000 values near one") {
        RngState rng(5);
        const auto values = sample_values(params(2000, 20, 0.9, 0.4, 0.4), rng);
        CHECK(std::abs(std::accumulate(values.begin(), values.end(), 0.0) / 2000.0 - 1.0) < 0.12);
    }
    SUBCASE("replay") {
        RngState a(6), b(6);
        CHECK(sample_values(params(500, 5, 0.9, 0, 0), a) == sample_values(params(500, 5, 0.9, 0, 0), b));
    }
}

TEST_CASE("assign_journals hand example") {
    const std::vector<double> values{5, 1, 3, 2};
    RngState rng(1);
    CHECK(assign_journals(values, params(4, 2, 1, 1, 0.0), rng) == std::vector<int>{1, 2, 1, 2});
}

TEST_CASE("single journal takes everything without drawing noise") {
    const std::vector<double> values{0.3, 2.0, 1.1, 0.7, 4.0};
    RngState rng(8);
    const RngState before = rng;
    CHECK(assign_journals(values, params(5, 1, 1, 1, 2.0), rng) == std::vector<int>(5, 1));
    CHECK(rng == before);
}

TEST_CASE("noiseless review equals blocked descending sort, including ties") {
    RngState gen(1234);
    for (int instance = 0; instance < 100; ++instance) {
        const int m = 1 + static_cast<int>(gen.next_u64() % 8);
        const int per = 1 + static_cast<int>(gen.next_u64() % 12);
        const int n = m * per;
        std::vector<double> values(static_cast<std::size_t>(n));
        for (auto& v : values) v = 1.0 + static_cast<double>(gen.next_u64() % 5);  // many duplicates
        RngState rng(instance);
        CHECK(assign_journals(values, params(n, m, 1, 1, 0.0), rng) == blocked_descending_sort(values, m));
    }
}

TEST_CASE("review draw count follows the cascade") {
    // Journal k < m draws one factor per received article: n - (k-1) n/m.
    const int n = 12, m = 4;
    std::vector<double> values(n, 1.0);
    RngState rng(77);
    assign_journals(values, params(n, m, 1, 1, 0.5), rng);
    RngState expected(77);
    for (int i = 0; i < 12 + 9 + 6; ++i) sample_standard_normal(expected);
    CHECK(rng == expected);
}

TEST_CASE("partition: every journal gets exactly n/m articles") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RngState rng(seed);
        const ModelParams p = params(600, 30, 0.9, 0.4, 1.0, seed);
        const auto values = sample_values(p, rng);
        const auto journals = assign_journals(values, p, rng);
        std::vector<int> count(31, 0);
        for (int j : journals) {
            REQUIRE(j >= 1);
            REQUIRE(j <= 30);
            ++count[j];
        }
        for (int k = 1; k <= 30; ++k) CHECK(count[k] == 20);
    }
}

TEST_CASE("sample_citations") {
    const std::vector<double> values{0.5, 1.5, 2.5};
    SUBCASE("no noise copies values") {
        RngState rng(2);
        CHECK(sample_citations(values, params(3, 1, 0.5, 0.0, 0), rng) == values);
    }
    SUBCASE("unit values reduce to the sampler") {
        RngState a(3), b(3);
        const std::vector<double> ones(1000, 1.0);
        const auto c = sample_citations(ones, params(1000, 1, 0, 1.3, 0), a);
        for (double x : c) REQUIRE(x == sample_lognormal_unit_mean(1.3, b));
    }
}

TEST_CASE("impact factors") {
    std::vector<Article> articles{{0, 1.0, 5.0, 1}, {1, 1.0, 1.0, 1}, {2, 1.0, 3.0, 2}, {3, 1.0, 2.0, 2}};
    CHECK(compute_impact_factors(articles, 2) == std::vector<double>{3.0, 2.5});

    std::vector<Article> one{{0, 1.0, 4.0, 1}, {1, 1.0, 3.0, 1}};
    CHECK(compute_impact_factors(one, 1) == std::vector<double>{3.5});

    std::vector<Article> flat{{0, 2.0, 1.0, 1}, {1, 0.1, 1.0, 2}, {2, 0.3, 1.0, 3}};
    CHECK(compute_impact_factors(flat, 3) == std::vector<double>{1.0, 1.0, 1.0});

    CHECK_THROWS_AS(compute_impact_factors(one, 2), std::logic_error);
    std::vector<Article> stray{{0, 1.0, 1.0, 3}};
    CHECK_THROWS_AS(compute_impact_factors(stray, 2), std::logic_error);
}

TEST_CASE("run_simulation") {
    SUBCASE("deterministic") {
        const ModelParams p = params(2000, 20, 0.65, 0.65, 0.4, 99);
        CHECK(run_simulation(p) == run_simulation(p));
        ModelParams q = p;
        q.seed = 100;
        CHECK_FALSE(run_simulation(p) == run_simulation(q));
    }
    SUBCASE("m = n gives one-article journals") {
        const auto out = run_simulation(params(2000, 2000, 0.65, 0.65, 0.4, 3));
        std::vector<int> seen(2001, 0);
        for (const Article& a : out.articles) {
            ++seen[a.journal];
            CHECK(out.impact_factors[a.journal - 1] == a.citations);
        }
        CHECK(std::count(seen.begin() + 1, seen.end(), 1) == 2000);
    }
    SUBCASE("IF is the mean of each journal's citations") {
        const auto out = run_simulation(params(300, 6, 0.9, 0.4, 0.7, 4));
        std::vector<double> sum(6, 0.0);
        for (const Article& a : out.articles) sum[a.journal - 1] += a.citations;
        for (int k = 0; k < 6; ++k) CHECK(out.impact_factors[k] == doctest::Approx(sum[k] / 50.0).epsilon(1e-12));
    }
    SUBCASE("prestige gradient without review noise") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto out = run_simulation(params(400, 8, 1.0, 0.5, 0.0, seed));
            std::vector<double> mean(8, 0.0);
            for (const Article& a : out.articles) mean[a.journal - 1] += a.value / 50.0;
            for (int k = 1; k < 8; ++k) CHECK(mean[k] <= mean[k - 1]);
        }
    }
}

TEST_CASE("pooled citation statistics over many runs") {
    // 50 runs x 2000 articles = 1e5 citations.
    double sum = 0.0, sum_log = 0.0, sum_log2 = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (const Article& a : run_simulation(params(2000, 20, 0.65, 0.65, 0.4, seed)).articles) {
            sum += a.citations;
            const double l = std::log(a.citations);
            sum_log += l;
            sum_log2 += l * l;
            ++count;
        }
    }
    const double n = static_cast<double>(count);
    const double mean_log = sum_log / n;
    const double var_log = (sum_log2 - n * mean_log * mean_log) / (n - 1.0);
    CHECK(std::abs(var_log - 1.3) < 0.04);
    // stderr sqrt((e^1.3 - 1) / 1e5) ~ 0.0054
    CHECK(std::abs(sum / n - 1.0) < 0.03);
}
