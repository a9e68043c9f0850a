#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pamg {

/// Seeded RNG wrapper. The engine (mt19937_64) is fully specified by the
/// standard, but std distributions are not, so bounded draws and unit
/// doubles are implemented here to keep output byte-identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform integer in [0, n). Lemire multiply-with-rejection, unbiased.
    std::uint64_t below(std::uint64_t n);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Derives the stream seed for one run of an ensemble:
    /// seed_run = splitmix64(splitmix64(master) ^ (index + 1) * phi64).
    static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

    static constexpr const char* generator_name = "mt19937_64";

private:
    std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Fisher-Yates with our own bounded draw (std::shuffle is not portable
/// across standard libraries).
template <typename T>
void shuffle_inplace(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace pamg
