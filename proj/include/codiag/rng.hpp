#pragma once

#include <cstdint>

namespace codiag {

// SplitMix64. Small, fast, and good enough for walk-on-spheres angles;
// used both as a plain generator and to key independent per-path streams.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

/// Stream for path `index` under run `seed`. Counter-based, so results do not
/// depend on worker count or scheduling order.
inline SplitMix64 path_rng(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ull * (index + 0x632be59bd9b4e019ull)));
    mix.next();
    mix.next();
    return mix;
}

} // namespace codiag
