#pragma once

#include <cstdint>

namespace ewalk {

// Counter-based per-realization random stream.
//
// Each realization gets its own stream derived from (master_seed,
// realization_index) through a fixed mixing function, so results are
// bitwise identical no matter how realizations are scheduled across
// threads.  The generator itself is a splitmix64 Weyl sequence: the
// state advances by a fixed odd constant and each output is a strong
// 64-bit mix of the state.
class StreamRng {
  public:
    StreamRng() = default;
    explicit StreamRng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Fixed splitting function: stream seed for realization i under a
    // given master seed.  Documented contract, do not change across
    // versions within a major release.
    static StreamRng for_realization(std::uint64_t master_seed,
                                     std::uint64_t realization_index) {
        return StreamRng(mix64(master_seed) ^
                         mix64(realization_index * 0xD1342543DE82EF95ULL + 1));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_ = 0;
};

}  // namespace ewalk
