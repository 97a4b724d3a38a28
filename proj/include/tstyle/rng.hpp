#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace tstyle::rng {

// All randomness in the toolkit flows through this header so that outputs
// are bit-reproducible across platforms. The generator is std::mt19937_64
// (fixed by the standard); the uniform and normal mappings below are our
// own because the std distributions are implementation-defined.

/// SplitMix64 finalizer. Used to turn correlated seed inputs into
/// well-mixed 64-bit states.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the n-th sub-stream of a master seed. Sub-streams are
/// independent of one another, so per-sample work can run in parallel
/// and still aggregate to the same result in any schedule.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t n) {
    return mix64(master + n * 0x9E3779B97F4A7C15ULL);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on (0, 1]; never returns 0 so log() is always safe.
    double uniform01() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer on [lo, hi], both ends inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(gen_() % span);
    }

    /// Standard Box-Muller transform; consumes exactly two uniforms per draw.
    double normal(double mean = 0.0, double stddev = 1.0) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) *
                         std::cos(2.0 * 3.14159265358979323846 * u2);
        return mean + stddev * z;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace tstyle::rng
