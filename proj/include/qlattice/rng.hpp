#pragma once

#include <cstdint>
#include <vector>

// Deterministic, platform-independent randomness. Standard-library
// distributions and std::shuffle are implementation-defined, so every draw
// here goes through splitmix64 with explicit rejection sampling: identical
// seeds give identical streams on any compiler.

namespace qlattice::rng {

/// splitmix64 finalizer: a well-mixed 64-bit hash of x.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ b);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(mix64(a, b) ^ c);
}

/// Map a hash to a double uniform in [0, 1).
constexpr double unit_double(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Canonical splitmix64 sequence generator.
class SplitMix64 {
  public:
    constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    constexpr double next_unit() { return unit_double(next()); }

  private:
    std::uint64_t state_;
};

/// Unbiased draw from [0, n) by rejection.
constexpr std::uint64_t bounded(SplitMix64& gen, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = gen.next();
        if (r >= threshold) return r % n;
    }
}

/// Fisher-Yates prefix: after the call, items[0..m) is a uniform sample
/// without replacement from the whole vector.
template <class T>
void partial_shuffle(std::vector<T>& items, std::size_t m, SplitMix64& gen) {
    const std::size_t n = items.size();
    for (std::size_t t = 0; t < m && t + 1 < n; ++t) {
        const std::size_t j = t + static_cast<std::size_t>(bounded(gen, n - t));
        std::swap(items[t], items[j]);
    }
}

} // namespace qlattice::rng
