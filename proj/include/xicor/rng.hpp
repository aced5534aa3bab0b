#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace xicor {

// SplitMix64 finalizer. Bijective on 64-bit words with full avalanche; serves
// both as the generator's output function and as the seed-derivation hash.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Seed for every randomized operation. Identical (input, seed) pairs produce
// bit-identical results, on any platform and regardless of thread count.
struct Seed {
    std::uint64_t value = 0;

    constexpr Seed() = default;
    constexpr Seed(std::uint64_t v) noexcept : value(v) {} // NOLINT: implicit by design

    // Independent child seed. For a fixed parent, distinct tags give distinct
    // children (mix64 is bijective), so substreams never collide within a chain.
    constexpr Seed with(std::uint64_t tag) const noexcept {
        return Seed{mix64(value + 0x9E3779B97F4A7C15ull * (tag + 1))};
    }
};

// Tags for deriving the fixed substreams used across the library.
namespace seed_tag {
inline constexpr std::uint64_t tie_break = 1;
inline constexpr std::uint64_t draw = 2;
inline constexpr std::uint64_t statistic = 3;
inline constexpr std::uint64_t point = 4;
inline constexpr std::uint64_t replicate = 5;
inline constexpr std::uint64_t trial = 6;
inline constexpr std::uint64_t jackknife = 7;
inline constexpr std::uint64_t select_m = 8;
inline constexpr std::uint64_t interval = 9;
} // namespace seed_tag

// Counter-based SplitMix64 stream. Deliberately not std::mt19937 etc. so that
// seeded runs are reproducible across standard libraries.
class Rng {
public:
    explicit constexpr Rng(Seed seed) noexcept : state_(seed.value) {}

    constexpr std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // Uniform on [0,1), 53-bit resolution (scaled fixed-point conversion).
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0,1); safe input for the inverse normal CDF.
    double next_open_unit() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on [a,b).
    double uniform(double a, double b) noexcept {
        return a + (b - a) * next_unit();
    }

    // Unbiased integer in [0,n); modulo with rejection.
    std::uint64_t below(std::uint64_t n) noexcept {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Fisher-Yates; std::shuffle is not pinned across implementations.
    template <typename T>
    void shuffle(std::span<T> items) noexcept {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace xicor
