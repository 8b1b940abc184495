#pragma once

#include <array>
#include <cstdint>

namespace impactsim {

/**
 * Deterministic pseudo-random generator used by every simulation run.
 *
 * The engine is xoshiro256** (Blackman & Vigna). The 256-bit state is
 * filled from a single 64-bit seed by four successive SplitMix64 outputs.
 * Replaying a seed reproduces the draw sequence bit-identically within a
 * given build.
 *
 * An RngState is owned by exactly one run; parallel runs each get their own
 * substream via derive_substream().
 */
class RngState {
public:
    explicit RngState(std::uint64_t seed);

    /// Next raw 64-bit output (one underlying draw).
    std::uint64_t next_u64();

    /// Uniform on (0, 1]; never returns 0. One underlying draw.
    double uniform_open0();

    /// Uniform on [0, 1). One underlying draw.
    double uniform_closed0();

    bool operator==(const RngState&) const = default;

private:
    std::array<std::uint64_t, 4> s_;
};

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
std::uint64_t mix64(std::uint64_t x);

/**
 * Seed for substream `run_index` under `master_seed`.
 *
 * seed = mix64(master_seed ^ mix64(run_index + 0x9E3779B97F4A7C15)).
 * A pure function of both inputs; distinct indices give distinct seeds
 * because mix64 is a bijection.
 */
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t run_index);

/// Generator for substream `run_index`; equals RngState(substream_seed(...)).
RngState derive_substream(std::uint64_t master_seed, std::uint64_t run_index);

/**
 * One N(0,1) draw by the Box-Muller transform, cosine branch only:
 * z = sqrt(-2 ln u1) * cos(2 pi u2), u1 on (0,1], u2 on [0,1).
 * Consumes exactly two underlying draws (u1 first); nothing is cached.
 */
double sample_standard_normal(RngState& rng);

/**
 * exp(x) with x ~ N(-sigma2/2, sigma2), so the mean is 1 for every sigma2.
 * Consumes exactly one normal draw, including when sigma2 == 0 (the result
 * is then exactly 1). Throws std::invalid_argument for negative or
 * non-finite sigma2.
 */
double sample_lognormal_unit_mean(double sigma2, RngState& rng);

}  // namespace impactsim
