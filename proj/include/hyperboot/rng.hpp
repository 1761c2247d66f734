#pragma once

#include <cstdint>
#include <random>

namespace hyperboot {

/// The one seeded generator used everywhere: std::mt19937_64, whose output
/// sequence is fixed by the standard. Bounded draws are derived here rather
/// than through <random> distributions, whose algorithms are
/// implementation-defined, so results match across standard libraries.
class Rng {
public:
    static constexpr const char* kName = "mt19937_64";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound). Requires bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    bool chance(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent sub-seeds from (seed, stream).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace hyperboot
