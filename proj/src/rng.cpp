#include "impactsim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace impactsim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RngState::RngState(std::uint64_t seed) {
    // SplitMix64 stream; never yields an all-zero xoshiro state in practice.
    for (auto& word : s_) {
        seed += kGolden;
        word = mix64(seed);
    }
}

std::uint64_t RngState::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngState::uniform_open0() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngState::uniform_closed0() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t run_index) {
    return mix64(master_seed ^ mix64(run_index + kGolden));
}

RngState derive_substream(std::uint64_t master_seed, std::uint64_t run_index) {
    return RngState(substream_seed(master_seed, run_index));
}

double sample_standard_normal(RngState& rng) {
    const double u1 = rng.uniform_open0();
    const double u2 = rng.uniform_closed0();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_lognormal_unit_mean(double sigma2, RngState& rng) {
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
        throw std::invalid_argument("lognormal sigma2 must be finite and >= 0, got " +
                                    std::to_string(sigma2));
    }
    const double z = sample_standard_normal(rng);
    return std::exp(-0.5 * sigma2 + std::sqrt(sigma2) * z);
}

}  // namespace impactsim
