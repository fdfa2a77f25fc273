#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "codet/errors.hpp"

namespace codet {

/// Reproducibility handle: one master value plus a stream id that separates
/// replications. The same (value, stream) yields an identical draw sequence
/// across runs; every consumer additionally derives a purpose-specific
/// sub-stream so inputs and intrusions stay mutually independent.
struct Seed {
    std::uint64_t value = 0;
    std::uint64_t stream = 0;

    friend bool operator==(const Seed&, const Seed&) = default;
};

inline constexpr std::uint64_t kInputPurpose = 1;
inline constexpr std::uint64_t kIntrusionPurpose = 2;

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

/// Collapse (value, stream, purpose) into one engine seed via a splitmix64
/// chain. Fixed algorithm; no platform-dependent behaviour.
inline std::uint64_t derive_engine_seed(const Seed& seed,
                                        std::uint64_t purpose) {
    std::uint64_t state = seed.value;
    std::uint64_t h = detail::splitmix64_next(state);
    state ^= seed.stream + 0x632BE59BD9B4E019ull;
    h ^= detail::splitmix64_next(state);
    state ^= purpose + 0xC2B2AE3D27D4EB4Full;
    h ^= detail::splitmix64_next(state);
    return h;
}

/// Seeded draw source with fixed variate algorithms. The generator is
/// std::mt19937_64 (fully specified by the standard); all distributions are
/// implemented here rather than taken from the platform library, so the
/// bit stream is identical everywhere.
class RandomEngine {
public:
    RandomEngine(const Seed& seed, std::uint64_t purpose)
        : gen_(derive_engine_seed(seed, purpose)) {}

    /// Uniform on (0, 1]: top 53 bits of the generator, shifted off zero.
    double uniform01() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via the Box-Muller transform (rejection-free);
    /// the sine partner of each pair is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = kTwoPi_ * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Gamma(shape, 1) by the Marsaglia-Tsang squeeze; shapes below one use
    /// the boost draw gamma(shape + 1) * u^(1/shape). Valid for shape > 0.
    double gamma(double shape) {
        if (!(shape > 0.0)) {
            throw BadParametersError("gamma shape must be positive");
        }
        if (shape < 1.0) {
            const double u = uniform01();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            const double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
                return d * v;
            }
        }
    }

    /// Beta(alpha, beta) as the gamma ratio g1 / (g1 + g2).
    double beta(double alpha, double beta) {
        const double g1 = gamma(alpha);
        const double g2 = gamma(beta);
        return g1 / (g1 + g2);
    }

    std::uint64_t raw() { return gen_(); }

private:
    static constexpr double kTwoPi_ = 6.283185307179586476925286766559;

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace codet
