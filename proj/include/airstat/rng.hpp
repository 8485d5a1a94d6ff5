#pragma once

#include <cmath>
#include <cstdint>

namespace airstat {

// Portable deterministic generator: xoshiro256++ seeded through splitmix64,
// the reference seeding procedure. Streams are split by taking splitmix64
// output number (salt + 1) of the parent seed as the child seed, so every
// derived stream is reproducible from the single top-level seed.
//
// Sampling recipes (fixed so streams are identical across platforms):
//   uniform      u = (next_u64() >> 11) * 2^-53, in [0, 1)
//   exponential  -log1p(-u) / rate
//   normal       Box-Muller, cosine branch, two uniforms per draw
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64_next(s);
    }

    std::uint64_t seed() const { return seed_; }

    Rng split(std::uint64_t salt) const {
        return Rng(splitmix64_at(seed_, salt + 1));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    double normal(double mean, double stddev) {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
        return mean + stddev * z;
    }

    // Rejection-sampled normal restricted to (0, inf).
    double positive_normal(double mean, double stddev) {
        double x = normal(mean, stddev);
        while (x <= 0.0) x = normal(mean, stddev);
        return x;
    }

    static std::uint64_t splitmix64_next(std::uint64_t& state) {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // k-th output (1-based) of the splitmix64 sequence started at seed.
    static std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
        std::uint64_t state = seed + (k - 1) * 0x9E3779B97F4A7C15ULL;
        return splitmix64_next(state);
    }

private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    std::uint64_t seed_;
};

}  // namespace airstat
