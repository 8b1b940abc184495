#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "impactsim/rng.hpp"

using namespace impactsim;

namespace {

std::vector<double> lognormal_draws(double sigma2, std::size_t count, std::uint64_t seed) {
    RngState rng(seed);
    std::vector<double> out(count);
    for (auto& x : out) x = sample_lognormal_unit_mean(sigma2, rng);
    return out;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance_of(const std::vector<double>& xs) {
    const double mu = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - mu) * (x - mu);
    return s / static_cast<double>(xs.size() - 1);
}

}  // namespace

TEST_CASE("same substream twice gives the same draws") {
    RngState a = derive_substream(42, 0);
    RngState b = derive_substream(42, 0);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("neighbouring substreams differ") {
    RngState a = derive_substream(42, 0);
    RngState b = derive_substream(42, 1);
    int equal = 0;
    for (int i = 0; i < 10000; ++i) equal += a.next_u64() == b.next_u64();
    CHECK(equal == 0);
}

TEST_CASE("substream derivation does not depend on earlier substreams") {
    const RngState direct = derive_substream(42, 7);
    for (std::uint64_t r = 0; r < 7; ++r) {
        RngState other = derive_substream(42, r);
        other.next_u64();
    }
    CHECK(derive_substream(42, 7) == direct);
    CHECK(RngState(substream_seed(42, 7)) == direct);
}

TEST_CASE("uniforms stay in their half-open ranges") {
    RngState rng(3);
    for (int i = 0; i < 100000; ++i) {
        const double a = rng.uniform_open0();
        const double b = rng.uniform_closed0();
        REQUIRE(a > 0.0);
        REQUIRE(a <= 1.0);
        REQUIRE(b >= 0.0);
        REQUIRE(b < 1.0);
    }
}

TEST_CASE("standard normal moments over 1e6 draws") {
    RngState rng(2024);
    std::vector<double> z(1'000'000);
    for (auto& x : z) x = sample_standard_normal(rng);
    CHECK(std::abs(mean_of(z)) < 0.01);
    CHECK(std::abs(variance_of(z) - 1.0) < 0.02);
}

TEST_CASE("a normal draw consumes exactly two raw draws") {
    RngState a(99);
    RngState b(99);
    sample_standard_normal(a);
    b.next_u64();
    b.next_u64();
    CHECK(a == b);
}

TEST_CASE("first normal draws for seed 42 match the golden file") {
    std::ifstream in(IMPACTSIM_GOLDEN_DIR "/normal_seed42.txt");
    REQUIRE(in);
    RngState rng(42);
    double expected = 0.0;
    int count = 0;
    while (in >> expected) {
        CHECK(sample_standard_normal(rng) == expected);
        ++count;
    }
    CHECK(count == 8);
}

TEST_CASE("lognormal with zero variance is exactly one") {
    for (double x : lognormal_draws(0.0, 1000, 5)) REQUIRE(x == 1.0);
}

TEST_CASE("lognormal(1.3) mean and median over 1e6 draws") {
    auto draws = lognormal_draws(1.3, 1'000'000, 11);
    CHECK(std::abs(mean_of(draws) - 1.0) < 0.01);
    std::nth_element(draws.begin(), draws.begin() + 500'000, draws.end());
    CHECK(std::abs(draws[500'000] - std::exp(-0.65)) < 0.01);
}

TEST_CASE("lognormal rejects negative variance") {
    RngState rng(1);
    CHECK_THROWS_AS(sample_lognormal_unit_mean(-0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_lognormal_unit_mean(std::nan(""), rng), std::invalid_argument);
}

TEST_CASE("lognormal properties across sigma2") {
    std::uint64_t seed = 100;
    for (double sigma2 : {0.1, 0.4, 0.65, 0.9, 1.3}) {
        CAPTURE(sigma2);
        const std::size_t n = 200'000;
        const auto draws = lognormal_draws(sigma2, n, seed++);
        for (double x : draws) REQUIRE((x > 0.0 && std::isfinite(x)));

        const double stderr_mean = std::sqrt((std::exp(sigma2) - 1.0) / static_cast<double>(n));
        CHECK(std::abs(mean_of(draws) - 1.0) < 6.0 * stderr_mean);

        std::vector<double> logs(n);
        std::transform(draws.begin(), draws.end(), logs.begin(), [](double x) { return std::log(x); });
        CHECK(std::abs(variance_of(logs) - sigma2) < 0.05 * sigma2);
    }
}

TEST_CASE("replaying a seed is bit-identical") {
    CHECK(lognormal_draws(0.9, 5000, 77) == lognormal_draws(0.9, 5000, 77));
}
