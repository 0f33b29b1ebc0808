#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace lr {

/// SplitMix64 finalizer. Used to spread seeds and stream ids over the full
/// 64-bit space before they reach the engine.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Engine seed for substream `stream_id` of `master`. Every parallel unit of
/// work (one synthetic row, one generated observation) owns one substream,
/// which is what makes results independent of scheduling: the draw sequence
/// for row t depends only on (master, t).
constexpr std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream_id) {
    return mix64(mix64(master) ^ mix64(stream_id));
}

/// Deterministic random stream: a fully specified engine (mt19937_64) plus
/// hand-rolled distribution transforms. The standard library's distribution
/// objects are implementation-defined, which would break the byte-identical
/// output contract, so everything above raw bits is implemented here.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    RandomStream(std::uint64_t master, std::uint64_t stream_id)
        : engine_(derive_stream_seed(master, stream_id)) {}

    std::uint64_t next_bits() { return engine_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_open_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform integer on [0, n), bias-free via rejection.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
        const std::uint64_t low = (-n) % n;  // 2^64 mod n
        std::uint64_t x = engine_();
        while (x < low) x = engine_();
        return x % n;
    }

    /// Standard normal via Box-Muller; the second draw of each pair is
    /// stashed, so consumption alternates two raw draws / zero.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang squeeze, with the standard
    /// U^(1/shape) boost for shape < 1.
    double gamma(double shape) {
        if (!(shape > 0)) throw std::invalid_argument("gamma: shape must be positive");
        if (shape < 1.0) {
            return gamma(shape + 1.0) * std::pow(uniform_open_pos(), 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0) continue;
            v = v * v * v;
            const double u = uniform_open_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    /// Beta(a, b) as a gamma ratio.
    double beta(double a, double b) {
        for (;;) {
            const double ga = gamma(a);
            const double gb = gamma(b);
            if (ga + gb > 0) return ga / (ga + gb);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0;
    bool has_spare_ = false;
};

}  // namespace lr
