#pragma once

#include <cstdint>

namespace qca {

// splitmix64: tiny counter-friendly generator used for sign patterns, random
// bases and Monte-Carlo draws. Not cryptographic.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound > 0. Modulo bias is irrelevant at the
    // bounds used here (all far below 2^32).
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

    int next_sign() { return (next() & 1u) ? 1 : -1; }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Derives the n-th stream seed from a master seed; recording the result is
// enough to replay a single trial.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    SplitMix64 g(master ^ (0x9e3779b97f4a7c15ull * (counter + 1)));
    return g.next();
}

} // namespace qca
