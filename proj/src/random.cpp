#include "ppm/random.hpp"

#include "ppm/special.hpp"

namespace ppm {

double RandomSource::normal() noexcept { return special::normal_quantile(uniform()); }

std::size_t RandomSource::index(std::size_t n) noexcept {
    // Lemire-style rejection keeps the draw unbiased.
    const std::uint64_t range = n;
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % range);
    std::uint64_t word = engine_();
    while (word >= limit) word = engine_();
    return static_cast<std::size_t>(word % range);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    // splitmix64 finalizer over the pair.
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace ppm
