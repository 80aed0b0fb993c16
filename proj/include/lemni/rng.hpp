#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace lemni {

// splitmix64: used both as a stand-alone mixer and to spread user seeds.
inline std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** — small, fast, and the output sequence is pinned by this file
// alone, so reports are reproducible independent of the standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto &w : s_) w = splitmix64(sm);
    }

    // Independent substream for trial #index of a seeded run.  Each trial
    // draws from its own stream, so a parallel schedule cannot change results.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t sm = seed;
        std::uint64_t a = splitmix64(sm);
        sm = a ^ (0x9E3779B97F4A7C15ULL * (index + 1));
        return Rng(splitmix64(sm));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform in {0, 1, ..., n-1}
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    // Area-uniform draw from the closed disk of the given radius.
    std::complex<double> uniform_disk(double radius) {
        double r = radius * std::sqrt(uniform());
        double theta = 2.0 * M_PI * uniform();
        return std::polar(r, theta);
    }

    // Uniform point on the unit circle.
    std::complex<double> uniform_phase() {
        return std::polar(1.0, 2.0 * M_PI * uniform());
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace lemni
