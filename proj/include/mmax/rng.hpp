#pragma once

#include <cstdint>

namespace mmax {

// SplitMix64 (Steele, Lea & Flood 2014). Chosen over std::mt19937_64 because
// the whole algorithm fits in a dozen lines, making cross-language
// reproduction of seeded runs trivial to verify.
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t sm64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return sm64_mix(state_);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double u01() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

private:
    std::uint64_t state_;
};

// Deterministic per-stream seed derivation: stream `idx` of a master seed.
// Used so simulation replicates can run in any order or in parallel while
// producing bit-identical draws.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t idx) {
    return sm64_mix(master + kGolden * (idx + 1));
}

}  // namespace mmax
