#pragma once

#include <array>
#include <cstdint>

namespace fracpvar {

// Seeded generators with a fixed cross-platform bit stream. std::mt19937 with
// the standard distributions would tie output bytes to the standard library
// implementation, which breaks the byte-identical-output guarantee.

inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) noexcept {
        for (auto& word : state_) word = splitmix64_next(seed);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

// Counter-based draw: sample i depends only on (seed, i), so a batch can be
// evaluated in any order or split across workers without changing the stream.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t state = seed ^ (index * 0xD1342543DE82EF95ULL);
    const std::uint64_t bits = splitmix64_next(state);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace fracpvar
