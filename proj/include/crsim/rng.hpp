#pragma once

#include <cstdint>

namespace crsim {

// Deterministic 64-bit generator (xoshiro256** scrambler on a splitmix-seeded
// state).  Streams are derived from a master seed plus a list of tags, so a
// consumer keyed by (seed, purpose, channel) never perturbs a stream keyed
// differently.  Adding channels or schemes leaves existing trajectories intact.
class Rng {
public:
    Rng() : Rng(0x9e3779b97f4a7c15ull) {}

    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : s_) word = splitmix(x);
    }

    std::uint64_t next() {
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

    // Uniform in [0, 1) with 53 bits of mantissa; bit-stable across platforms.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
};

// Derives an independent stream from a master seed and up to three tags.
// Mixing is a few rounds of splitmix over the concatenated words.
inline Rng substream(std::uint64_t master, std::uint64_t tag0,
                     std::uint64_t tag1 = 0, std::uint64_t tag2 = 0) {
    std::uint64_t x = master;
    auto absorb = [&x](std::uint64_t w) {
        x ^= w + 0x9e3779b97f4a7c15ull + (x << 6) + (x >> 2);
        x *= 0xff51afd7ed558ccdull;
        x ^= x >> 33;
    };
    absorb(tag0);
    absorb(tag1);
    absorb(tag2);
    return Rng(x);
}

} // namespace crsim
