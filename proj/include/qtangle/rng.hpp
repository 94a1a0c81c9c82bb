#pragma once

#include <cmath>
#include <cstdint>

namespace qtangle {

/// Counter-based pseudo-random generator built on the SplitMix64 finalizer.
///
/// Draw k of a stream is a pure function of (seed, k):
///   output(k) = mix64(seed + (k+1) * kGamma)
/// with kGamma = 0x9E3779B97F4A7C15 (the 64-bit golden-ratio increment) and
/// mix64 the SplitMix64 constants 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB.
/// Substreams are derived as
///   substream(seed, key) = mix64(mix64(seed) ^ (key * kGamma + 1))
/// so any implementation of this scheme reproduces the same streams.
class CounterRng {
  public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    static std::uint64_t substream(std::uint64_t seed, std::uint64_t key) {
        return mix64(mix64(seed) ^ (key * kGamma + 1));
    }

    std::uint64_t next_u64() { return mix64(seed_ + (++counter_) * kGamma); }

    /// Uniform double in [0, 1), 53 random mantissa bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate (Box-Muller; caches the paired draw).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite.
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qtangle
