#pragma once

#include <array>
#include <cstdint>

#include "lindblad/matrix.hpp"

namespace lindblad::rng {

/// xoshiro256++ stream seeded through SplitMix64. Substream k of seed s
/// starts the SplitMix64 chain at s + k * 0x9E3779B97F4A7C15 (wrapping), so
/// per-trajectory streams are independent of how many streams are drawn.
/// Gaussian variates come from Box-Muller on (0,1] uniforms; a complex
/// Gaussian has independent standard-normal real and imaginary parts.
/// This generator is part of the CSV reproducibility contract.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : Stream(seed, 0) {}
    Stream(std::uint64_t seed, std::uint64_t substream);

    std::uint64_t next_u64();

    /// Uniform in (0, 1].
    double uniform01();

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal.
    double gaussian();

    /// Independent N(0,1) real and imaginary parts.
    cplx complex_gaussian();

private:
    std::array<std::uint64_t, 4> state_{};
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

} // namespace lindblad::rng
