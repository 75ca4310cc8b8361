#include "spfff/rng.hpp"

namespace spfff {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (stream * 0x9E3779B97F4A7C15ULL);
  return splitmix64(state);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : gen_(derive_seed(seed, stream)) {}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the modulus unbiased.
  const std::uint64_t excess = (UINT64_MAX % n + 1) % n;
  std::uint64_t x = gen_();
  if (excess != 0) {
    const std::uint64_t limit = 0 - excess;  // 2^64 - excess
    while (x >= limit) x = gen_();
  }
  return x % n;
}

}  // namespace spfff
