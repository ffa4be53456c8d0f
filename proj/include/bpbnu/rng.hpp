#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "scalar.hpp"

namespace bpbnu {

/// SplitMix64 (Steele, Lea, Flood 2014). State advances by the golden-gamma
/// constant 0x9E3779B97F4A7C15; outputs pass through the standard mix.
/// Chosen so generated corpora reproduce bit-for-bit in any language.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0,1) from the top 53 bits.
    double uniform() noexcept { return double((*this)() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform on {0,..,bound-1}; bound must be positive. Multiply-shift, no rejection.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        __extension__ using u128 = unsigned __int128;
        return std::uint64_t((u128((*this)()) * bound) >> 64);
    }

    std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Uniform unimodular scalar: a random sign, or e^{2 pi i u}.
template <Scalar S>
S random_phase(SplitMix64& rng)
{
    if constexpr (is_complex_v<S>)
        return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    else
        return (rng() >> 63) ? -1.0 : 1.0;
}

/// Random scalar with modulus uniform in [0, radius).
template <Scalar S>
S random_in_disk(SplitMix64& rng, double radius = 1.0)
{
    const double r = radius * rng.uniform();
    return r * random_phase<S>(rng);
}

} // namespace bpbnu
