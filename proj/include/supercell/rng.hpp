#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace supercell {

// splitmix64 finalizer. Used everywhere a seed has to be derived from
// another seed plus an index, so that streams for different trials,
// links, and sweep points never overlap.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Documented seed-mixing rule (see README): fold each component through
// the splitmix64 finalizer. Stable across platforms and versions.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(mix64(base) ^ a) ^ b);
}

// mt19937_64 with hand-written distribution transforms. The engine is
// bit-exact by the standard; std:: distributions are not, so uniform,
// normal, and exponential draws are derived here explicitly to keep
// results reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller, one value per call (two uniforms consumed).
    double normal(double mean, double stddev) {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

    // Exponential with the given mean (inverse CDF).
    double exponential(double mean) {
        const double u = 1.0 - uniform();  // (0, 1]
        return -mean * std::log(u);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace supercell
