#pragma once

#include <cstdint>
#include <random>

namespace sqc {

// Deterministic random stream. Backed by std::mt19937_64, whose output
// sequence is fixed by the standard, so identical seeds give identical
// draws on every platform. Bounded and real draws are derived from the
// raw 64-bit output directly rather than through std::*_distribution,
// which is implementation-defined.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform index in [0, n).
    std::size_t next_index(std::size_t n) {
        const std::size_t i =
            static_cast<std::size_t>(next_double() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    // Independent stream derived from this stream's seed and a tag.
    // Used to give each benchmark cell its own stream so concurrency
    // never changes results.
    RngStream substream(std::uint64_t tag) const {
        return RngStream(mix(seed_ ^ mix(tag)));
    }

private:
    // splitmix64 finalizer.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace sqc
