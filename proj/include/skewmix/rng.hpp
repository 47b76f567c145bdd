#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace skewmix {

/// Deterministic random number generator.
///
/// Wraps std::mt19937_64 but converts raw 64-bit words to variates with
/// fixed arithmetic (no std::*_distribution), so a given seed produces the
/// same stream on every platform and standard library. All samplers in the
/// library take an Rng& owned by the caller; nothing in the library holds
/// global random state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1); never returns an exact 0.
    double uniform_pos() {
        double u;
        do { u = uniform(); } while (u <= 0.0);
        return u;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // rejection from the top to avoid modulo bias
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x;
        do { x = engine_(); } while (x >= limit);
        return x % n;
    }

    /// Standard normal via the Marsaglia polar method (no cached spare).
    double normal() {
        for (;;) {
            const double u = 2.0 * uniform() - 1.0;
            const double v = 2.0 * uniform() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                return u * std::sqrt(-2.0 * std::log(s) / s);
            }
        }
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang, with the U^{1/a} boost for shape < 1.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = uniform_pos();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    /// Independent child stream; used to give EM starts their own streams.
    Rng spawn(std::uint64_t stream_index) {
        // splitmix64 on (engine word, index) decorrelates child seeds
        std::uint64_t z = engine_() + 0x9e3779b97f4a7c15ull * (stream_index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return Rng(z ^ (z >> 31));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace skewmix
