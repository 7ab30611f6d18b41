#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace mqlswarm {

/// Seeded pseudo-random stream shared by one engine run.
///
/// Distributions are computed here rather than through <random>'s
/// distribution classes, whose output is implementation-defined; this keeps
/// traces bit-identical across standard libraries for the same seed.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) {
            throw std::invalid_argument("uniform_index: empty range");
        }
        const std::uint64_t range = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
        std::uint64_t draw = engine_();
        while (draw >= limit) {
            draw = engine_();
        }
        return static_cast<std::size_t>(draw % range);
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace mqlswarm
