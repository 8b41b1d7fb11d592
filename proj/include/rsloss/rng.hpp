#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace rsloss {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream identifier for one replication: hash(seed, grid_index, replication_index).
constexpr std::uint64_t stream_id(std::uint64_t seed, std::uint64_t grid_index,
                                  std::uint64_t replication) noexcept {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (grid_index + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ (replication + 0x85157af5ULL));
    return h;
}

/// xoshiro256** seeded from a single 64-bit stream id. Satisfies
/// UniformRandomBitGenerator, so it plugs into <random> distributions.
class StreamEngine {
public:
    using result_type = std::uint64_t;

    explicit StreamEngine(std::uint64_t id) noexcept {
        std::uint64_t x = id;
        for (auto& s : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            s = splitmix64(x);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
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

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace rsloss
