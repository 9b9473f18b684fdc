// rng.hpp — deterministic RNG streams and seed derivation.
// All randomness in the toolkit flows through these helpers so that a run is
// reproducible bit-for-bit from a single master seed, independent of platform
// and of how work is split across threads.
#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace ebcache {

// SplitMix64 finalizer. Stateless, used both as a mixer and a stream hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// FNV-1a over a label, folded into the master seed. Labeled derivation keeps
// per-module streams independent: derive_seed(master, "phy") never collides
// with derive_seed(master, "sim") for the same master.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return splitmix64(master ^ h);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index) {
    return splitmix64(derive_seed(master, label) ^ (0x632be59bd9b4e019ull * (index + 1)));
}

// Counter-based stream: value(i) is a pure function of (seed, i), so trials
// may be evaluated in any order or in parallel with identical results.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(splitmix64(seed ^ 0xd1b54a32d192ed03ull)) {}

    std::uint64_t value(std::uint64_t counter) const {
        return splitmix64(seed_ + 0x9e3779b97f4a7c15ull * counter);
    }
    // Uniform in [0,1).
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(value(counter) >> 11) * 0x1.0p-53;
    }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

// Sequential stream with the usual generator interface. xoshiro256** core;
// seeded via splitmix so nearby seeds give unrelated streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x += 0x9e3779b97f4a7c15ull);
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

    // Uniform in [0,1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free would bias for huge n; n here is tiny (node/content counts).
        std::uint64_t threshold = (~n + 1) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Standard normal via Box-Muller. Consumes two draws per call; the second
    // product is discarded so stream position stays a function of call count.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace ebcache
