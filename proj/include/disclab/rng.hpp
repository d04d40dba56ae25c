#ifndef DISCLAB_RNG_HPP
#define DISCLAB_RNG_HPP

#include <cstdint>

namespace disclab {

/** Deterministic splittable random stream (SplitMix64).
 *
 * A root seed plus a stream index yield an independent sequence whose draws
 * depend only on (root, index), never on thread layout or draw interleaving.
 * Monte Carlo estimators key one stream per sample index, which makes their
 * results invariant under the worker count. */
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(mix(seed ^ kSalt)) {}

    RngStream(std::uint64_t root, std::uint64_t stream)
        : state_(mix(mix(root ^ kSalt) + kGamma * (stream + 1))) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kSalt = 0x5851F42D4C957F2DULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Root seed for a named sub-experiment, decorrelated from the parent root.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag) {
    RngStream s(root, 0xD15C1AB000000000ULL + tag);
    return s.next_u64();
}

}  // namespace disclab

#endif
