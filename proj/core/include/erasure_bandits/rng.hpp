#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace eb {

// SplitMix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed for sub-stream `stream` of an episode seeded with `seed`.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ (0x632be59bd9b4e019ull * (stream + 1)));
}

// Seeded random source. The engine is std::mt19937_64, which the standard
// specifies bit-exactly; all draw helpers are hand-rolled on top of the raw
// 64-bit output so that streams are identical across standard libraries
// (<random> distributions carry no such guarantee).
class RandomSource {
public:
    static constexpr const char* kGeneratorName = "mt19937_64";

    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), n >= 1. Bitmask rejection, exact and unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
        for (;;) {
            const std::uint64_t r = next_u64() & mask;
            if (r < n) return r;
        }
    }

    // Uniform arm id in [1, k].
    int next_arm(int k) {
        return static_cast<int>(next_below(static_cast<std::uint64_t>(k))) + 1;
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by RandomSource (std::shuffle is not portable).
template <typename T>
void shuffle(std::vector<T>& v, RandomSource& rng) {
    for (std::size_t j = v.size(); j > 1; --j) {
        const std::size_t k = static_cast<std::size_t>(rng.next_below(j));
        std::swap(v[j - 1], v[k]);
    }
}

}  // namespace eb
