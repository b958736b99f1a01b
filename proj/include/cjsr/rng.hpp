#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace cjsr {

// SplitMix64 generator. Deterministic across platforms, cheap to split:
// observation i uses the stream state mix(seed ^ mix(i + 1)), so parallel
// synthesis reproduces the serial output exactly.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(mix(seed ^ mix(index + 1)));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix_final(state_);
    }

    // uniform on [0, 1), 53-bit mantissa
    double next_double() { return static_cast<double>(next() >> 11) * 0x1p-53; }

    // uniform on (0, 1]; safe for log()
    double next_double_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1p-53; }

    // unbiased uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = (~0ull) - (~0ull) % n;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    // Box-Muller pair of standard normals
    std::pair<double, double> next_normal_pair() {
        constexpr double two_pi = 6.283185307179586476925286766559;
        const double u1 = next_double_open();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        return mix_final(x);
    }
    static std::uint64_t mix_final(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace cjsr
