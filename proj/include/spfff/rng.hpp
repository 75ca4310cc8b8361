#ifndef SPFFF_RNG_HPP
#define SPFFF_RNG_HPP

#include <cstdint>
#include <random>

namespace spfff {

// Sub-stream tags. Every consumer of randomness draws from its own stream so
// that adding or reordering consumers never shifts another one's sequence.
inline constexpr std::uint64_t kPointStream = 1;
inline constexpr std::uint64_t kMonteCarloStream = 2;
inline constexpr std::uint64_t kLhsStream = 3;
inline constexpr std::uint64_t kValidationStream = 4;

// SplitMix64 step; used to derive sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic 64-bit generator (std::mt19937_64, whose output sequence is
// fixed by the standard) with SplitMix64-derived sub-stream seeding. Uniform
// mappings are implemented here instead of <random> distributions, which are
// not bit-portable across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unbiased integer in [0, n); n must be >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 gen_;
};

}  // namespace spfff

#endif  // SPFFF_RNG_HPP
