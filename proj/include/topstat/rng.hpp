#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string_view>

namespace topstat {

// Counter-based splittable generator. The state is a 64-bit key plus a
// counter; output i is a strong 64-bit mix of (key + i * gamma). Derived
// streams shift the key, so substreams never share outputs with the parent
// and regeneration from the same (seed, label) path is bit-identical.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed ^ kSeedSalt)) {}

    /// Independent substream identified by a text label (e.g. a model tag).
    [[nodiscard]] Rng derive(std::string_view label) const {
        std::uint64_t h = key_ ^ kLabelSalt;
        for (unsigned char c : label) h = mix(h ^ (std::uint64_t{c} * 0x100000001B3ull));
        return Rng(h, raw_key{});
    }

    /// Independent substream identified by an index (trial, cell, ...).
    [[nodiscard]] Rng derive(std::uint64_t index) const {
        return Rng(mix(key_ ^ mix(index + kIndexSalt)), raw_key{});
    }

    std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

    /// Uniform on [0, 1), 53 random mantissa bits.
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1); safe for log/quantile transforms.
    double uniform_open() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    double cauchy() { return std::tan(std::numbers::pi * (uniform_open() - 0.5)); }

    /// Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape < 1 boosted via
    /// Gamma(shape + 1) * U^(1/shape).
    double gamma(double shape) {
        if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
        if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform_open(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_open();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double a, double b) {
        const double x = gamma(a);
        const double y = gamma(b);
        return x / (x + y);
    }

private:
    struct raw_key {};
    Rng(std::uint64_t key, raw_key) : key_(key) {}

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kSeedSalt = 0x5851F42D4C957F2Dull;
    static constexpr std::uint64_t kLabelSalt = 0x14057B7EF767814Full;
    static constexpr std::uint64_t kIndexSalt = 0x632BE59BD9B4E019ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace topstat
