#pragma once

// Randomness contract: every stochastic routine takes a std::mt19937_64 by
// reference (the engine's output sequence is fixed by the C++ standard), and
// all derived draws below avoid platform-dependent distributions.  Given a
// seed, trajectories are bit-identical across runs and platforms.

#include "sca5/rational.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace sca5 {

using Rng = std::mt19937_64;

// Unbiased uniform draw from [0, bound) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    const std::uint64_t rem = (0 - bound) % bound;  // 2^64 mod bound
    const std::uint64_t limit = 0 - rem;            // largest multiple of bound
    for (;;) {
        const std::uint64_t r = rng();
        if (limit == 0 || r < limit) return r % bound;
    }
}

// True with probability exactly alpha = p/q.
inline bool bernoulli(Rng& rng, const NoiseParam& noise) {
    const Int& num = numerator(noise.alpha);
    const Int& den = denominator(noise.alpha);
    if (den > Int(std::uint64_t(1) << 63))
        throw std::invalid_argument("bernoulli: denominator too large to sample");
    const auto q = den.convert_to<std::uint64_t>();
    const auto p = num.convert_to<std::uint64_t>();
    if (q == 1) return p == 1;  // alpha is 0 or 1
    return uniform_below(rng, q) < p;
}

}  // namespace sca5
