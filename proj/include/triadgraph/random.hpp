#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace triadgraph {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seeded xoshiro256** stream (256-bit state).
///
/// The state is filled from a SplitMix64 sequence started at
///   key = mix64(seed ^ mix64(stream_id ^ 0xD1B54A32D192ED03))
/// so (seed, stream_id) pairs map to unrelated states. Output is reproducible
/// for a fixed (seed, stream_id) on a given build.
///
/// Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t key = mix64(seed ^ mix64(stream_id ^ 0xD1B54A32D192ED03ULL));
    for (auto& word : state_) {
      key += 0x9E3779B97F4A7C15ULL;
      word = mix64(key);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

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

  /// Unbiased integer in [0, bound). Lemire's multiply-and-reject method;
  /// `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// True with probability p; exact at p = 0 and p = 1.
  bool bernoulli(double p) noexcept { return uniform01() < p; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
};

/// Stream for replica `replica_index` of an experiment seeded with `base_seed`.
inline RandomStream derive_stream(std::uint64_t base_seed,
                                  std::uint64_t replica_index) noexcept {
  return RandomStream(base_seed, replica_index);
}

}  // namespace triadgraph
