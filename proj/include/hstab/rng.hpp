#pragma once

#include <cstdint>
#include <random>

namespace hstab {

/// splitmix64 finalizer, used to derive independent substream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic sampler.
///
/// The generator is std::mt19937_64 (its output sequence is pinned by the
/// C++ standard), seeded directly with the given 64-bit seed. Bounded draws
/// use plain modulo reduction; the tiny modulo bias is irrelevant for these
/// suites, while cross-platform reproducibility is part of the contract.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return eng_(); }

  /// Integer in [lo, hi] (inclusive), lo <= hi.
  long long int_in(long long lo, long long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    return lo + static_cast<long long>(next_u64() % span);
  }

  /// Real in [0, 1) with 53 random bits.
  double unit_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Independent substream k, derived from the *constructing* seed so the
  /// split layout does not depend on how much this stream has been consumed.
  Sampler split(std::uint64_t k) const { return Sampler(mix64(seed_ ^ mix64(k + 1))); }

private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

} // namespace hstab
