#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace adlex {

// Deterministic PRNG (splitmix64). Standard-library distributions are
// implementation-defined, so all sampling primitives live here to keep
// artifacts byte-identical across compilers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling to avoid modulo bias
        std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Standard normal via Box-Muller (no caching so the stream is position-independent).
    double next_normal() {
        double u1 = next_double(), u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Derives a stage-specific seed from the run seed so every pipeline step is
// independently reproducible. FNV-1a over the tag mixed with the root.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view stage, std::uint64_t index = 0) {
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : stage) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    h ^= root + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= index * 0xbf58476d1ce4e5b9ULL;
    Rng mix(h);
    return mix.next_u64();
}

}  // namespace adlex
