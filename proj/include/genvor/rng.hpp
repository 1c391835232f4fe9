#pragma once

#include <cstdint>

namespace genvor {

/// SplitMix64 finalizer used as a stateless counter-based generator: every
/// draw is a pure function of (seed, stream, counter), so substreams keyed by
/// site index stay stable when the instance grows.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b + 0x632BE59BD9B4E019ull));
}

class CounterRng {
public:
    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix_seed(seed, stream)) {}

    constexpr std::uint64_t at(std::uint64_t counter) const { return splitmix64(key_ ^ splitmix64(counter)); }

    constexpr std::uint64_t next() { return at(counter_++); }

    /// Uniform in [0, 1) with 53 random bits.
    constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) (multiply-shift, bias below 2^-64 * bound).
    constexpr std::uint64_t below(std::uint64_t bound) {
        auto wide = static_cast<unsigned __int128>(next()) * bound;
        return static_cast<std::uint64_t>(wide >> 64);
    }

    constexpr bool coin() { return (next() >> 63) != 0; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace genvor
