#pragma once

#include <cstdint>

namespace qwalk {

// Counter-based generator: value i of stream (seed, stream) depends only on
// (seed, stream, i), so parallel and serial execution produce identical
// draws.  The mixer is the splitmix64 finalizer.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter) {
    return mix64(key + 0x9E3779B97F4A7C15ULL * (counter + 1));
}

/// Key for an independent substream (one per Monte Carlo trial, etc.).
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    return counter_hash(mix64(seed ^ 0xA3EC4E9302B8DF17ULL), stream);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential view of one counter stream.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key, std::uint64_t start = 0)
        : key_(key), counter_(start) {}

    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t start)
        : key_(derive_stream(seed, stream)), counter_(start) {}

    std::uint64_t next_bits() { return counter_hash(key_, counter_++); }
    double next_unit() { return to_unit_interval(next_bits()); }

    /// Uniform in [0, 1) at an absolute counter position, without advancing.
    double at(std::uint64_t counter) const {
        return to_unit_interval(counter_hash(key_, counter));
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace qwalk
