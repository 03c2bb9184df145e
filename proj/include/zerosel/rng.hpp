#ifndef ZEROSEL_RNG_HPP
#define ZEROSEL_RNG_HPP

#include <cmath>
#include <cstdint>

namespace zerosel {

// SplitMix64 (Steele/Lea/Vigna). One 64-bit word of state, output sequence
// fully determined by the seed. Used everywhere randomness is needed so that
// datasets, subsampling and k-means initializations reproduce across
// platforms; the standard-library distributions are implementation-defined
// and would not.
//
// Derived draws:
//   next_double  - 53-bit mantissa uniform in [0, 1)
//   next_below   - unbiased integer in [0, n) via rejection sampling
//   next_normal  - Box-Muller, cosine branch; consumes exactly two uniforms
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_below(std::uint64_t n) {
    // threshold = 2^64 mod n; rejecting below it removes modulo bias
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  double next_normal() {
    const double u = 1.0 - next_double();  // (0, 1]; keeps log finite
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * next_double();
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
};

}  // namespace zerosel

#endif
