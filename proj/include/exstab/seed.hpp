#pragma once

#include <cstdint>

namespace exstab {

// Master seed of an experiment. Trial t derives its own generator state via
// mix_seed(value, t); identical (value, t) always yields the identical stream,
// independent of platform and thread count.
struct Seed {
    std::uint64_t value = 0;
};

// SplitMix64 finalizer. The constants below are fixed: reimplementations in
// other languages must reproduce them bit for bit to replay an experiment.
inline std::uint64_t splitmix64_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derived seed for stream `stream` of master seed `seed`:
//   finalize(seed + (stream + 1) * 0x9E3779B97F4A7C15).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64_finalize(seed + (stream + 1) * 0x9E3779B97F4A7C15ull);
}

// Minimal SplitMix64 engine. Unbiased bounded draws by rejection.
class SplitMix {
  public:
    explicit SplitMix(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return splitmix64_finalize(state_);
    }

    // Uniform on {0, ..., bound-1}, exactly. bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

}  // namespace exstab
