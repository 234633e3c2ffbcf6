#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Seeded randomness with pinned byte-level behavior. std::mt19937_64 output
// is specified by the standard, but the std distributions are not, so the
// draws below are spelled out explicitly. Every randomized result in this
// library must be reproducible from (inputs, seed) alone.

namespace mobiflow::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

/// Element `index` of the splitmix64 stream seeded at `base`. Used to give
/// independent runs (consensus run i, generator substreams) their own seeds
/// so that parallel and sequential execution agree.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix(base + (index + 1) * kGolden);
}

class Engine {
public:
    explicit Engine(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    /// Box-Muller transform; one value per two uniform draws.
    double gaussian(double mean, double sigma) {
        const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        return mean + sigma * z;
    }

    /// Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace mobiflow::rng
