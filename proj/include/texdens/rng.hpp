#pragma once

// Portable random number generation.
//
// The generator is xoshiro256** (Blackman & Vigna), seeded by expanding a
// 64-bit seed through splitmix64. Bounded integers use modulo with rejection
// of the biased low range, doubles take the top 53 bits. None of the std::*_distribution
// classes are used, so streams are identical on every platform.

#include <array>
#include <cstdint>
#include <limits>

namespace texdens {

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256(std::uint64_t seed) noexcept
    {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    /// Raw state, for reproducing published test vectors. Must not be all zero.
    static constexpr Xoshiro256 from_state(const std::array<std::uint64_t, 4>& state) noexcept
    {
        Xoshiro256 g(0);
        g.s_ = state;
        return g;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept
    {
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

    /// Uniform integer in [0, bound). bound must be > 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept
    {
        // Reject the low 2^64 mod bound values so the modulo is unbiased.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t x = (*this)();
            if (x >= threshold)
                return x % bound;
        }
    }

    /// Uniform double in [0, 1).
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

/// Stable per-(frame, track) seed. Each input is folded through splitmix64 so
/// neighbouring ids give unrelated streams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::int64_t frame, std::int64_t track_id) noexcept
{
    std::uint64_t h = SplitMix64(seed).next();
    h = SplitMix64(h ^ static_cast<std::uint64_t>(frame)).next();
    h = SplitMix64(h ^ static_cast<std::uint64_t>(track_id)).next();
    return h;
}

} // namespace texdens
