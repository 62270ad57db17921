#pragma once

#include <cstdint>
#include <span>

#include "curl/types.hpp"

namespace curl {

/// Splittable counter-style generator (splitmix64). Every simulation owns an
/// explicit 64-bit seed and derives independent per-agent substreams, so
/// results are reproducible bit-for-bit regardless of scheduling. No global
/// state anywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Substream `stream` of a master seed; O(1), order-independent.
    static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream) {
        return SplitMix64(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Index sampled from (possibly unnormalized) nonnegative weights by
    /// inverse-CDF walk; the last positive-weight index absorbs rounding.
    Index sample(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = next_double() * total;
        Index last_positive = 0;
        for (Index i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0.0) continue;
            last_positive = i;
            if (u < weights[i]) return i;
            u -= weights[i];
        }
        return last_positive;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
};

} // namespace curl
