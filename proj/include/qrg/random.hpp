#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace qrg {

// Seed derivation for per-trial / per-restart streams. splitmix64 finalizer.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1) + 0xBF58476D1CE4E5B9ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stable string hash used to name RNG streams (FNV-1a).
constexpr std::uint64_t stream_id(const char* name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (; *name; ++name) {
        h ^= static_cast<unsigned char>(*name);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seeded generator with platform-independent conversions. The standard
/// distributions are implementation-defined, so reports would not be
/// byte-stable across standard libraries if we used them.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform in {0, ..., n-1}; n > 0.
    std::size_t below(std::size_t n) {
        // Lemire-style rejection keeps the result unbiased.
        const std::uint64_t bound = n;
        const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return static_cast<std::size_t>(r % bound);
    }

    std::complex<double> unit_phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

    /// Uniform in the closed unit disc.
    std::complex<double> in_disc() { return std::polar(std::sqrt(uniform()), 2.0 * std::numbers::pi * uniform()); }

    /// Standard complex Gaussian (Box-Muller), E|z|^2 = 1.
    std::complex<double> gaussian() {
        const double u = 1.0 - uniform();
        const double r = std::sqrt(-std::log(u));
        return std::polar(r, 2.0 * std::numbers::pi * uniform());
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace qrg
