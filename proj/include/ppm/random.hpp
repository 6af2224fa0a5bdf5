#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ppm {

/// Seeded pseudo-random stream.
///
/// Wraps a 64-bit Mersenne Twister and derives every variate from raw 64-bit
/// words, so a given seed yields the same stream on every standard library.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via the inverse CDF.
    double normal() noexcept;

    /// Uniform integer on [0, n).  n must be positive.
    std::size_t index(std::size_t n) noexcept;

    std::uint64_t next() noexcept { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Mixes a master seed with a task index into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace ppm
