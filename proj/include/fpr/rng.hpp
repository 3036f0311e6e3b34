// ============================================================================
// rng.hpp -- stateless substream derivation for reproducible parallel trials.
//
// Every trial owns an independent SplitMix64 stream whose starting state is a
// pure function of (master_seed, hypothesis, trial_index):
//
//   mix(z)      = SplitMix64 finalizer (Stafford variant 13)
//   key         = mix(mix(master_seed) ^ (2 * trial_index + h)),  h = 0 for H0, 1 for H1
//   draw k      = mix(key + (k + 1) * 0x9E3779B97F4A7C15),        k = 0, 1, ...
//   uniform(u)  = (draw >> 11) * 2^-53                            in [0, 1)
//
// mix is a bijection on 64-bit words, so distinct (hypothesis, trial_index)
// pairs never share a key for a given master seed. Draw k is consumed by
// pulse k + 1 of the trial.
// ============================================================================
#pragma once

#include <cstdint>

namespace fpr {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class TrialRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr TrialRng(std::uint64_t key) noexcept : state_(key) {}

  static constexpr TrialRng for_trial(std::uint64_t master_seed,
                                      unsigned hypothesis_bit,
                                      std::uint64_t trial_index) noexcept {
    return TrialRng(splitmix64_mix(splitmix64_mix(master_seed) ^
                                   (2 * trial_index + (hypothesis_bit & 1U))));
  }

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kGamma;
    return splitmix64_mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace fpr
