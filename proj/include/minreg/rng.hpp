#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>

namespace minreg {

/// Counter-based pseudorandom generator (splitmix64 finalizer over a keyed
/// counter). Streams are cheap to derive, so every sample/run/cell can own a
/// substream keyed by its logical index; results never depend on scheduling.
class Rng {
 public:
  Rng() = default;
  explicit Rng(std::uint64_t key) : key_(key) {}

  /// Fold extra words into the key, e.g. Rng::keyed({seed, ad_id, k}).
  static Rng keyed(std::initializer_list<std::uint64_t> words) {
    std::uint64_t k = 0x6a09e667f3bcc909ULL;
    for (auto w : words) k = mix(k ^ mix(w));
    return Rng(k);
  }

  Rng substream(std::uint64_t id) const { return Rng(mix(key_ ^ mix(id ^ 0x9e3779b97f4a7c15ULL))); }

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0,1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Uniform integer in [0,n). Lemire's multiply-shift; bias < n/2^64.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Inverse-transform exponential draw with the given mean.
  double exponential(double mean) { return -mean * std::log1p(-next_double()); }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

/// One value derived from a tuple, with no stream state. Used for
/// order-independent per-entity randomness such as uniform-range CTPs.
inline double hash_to_unit(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t k = Rng::mix(a ^ 0x2545f4914f6cdd1dULL);
  k = Rng::mix(k ^ Rng::mix(b));
  k = Rng::mix(k ^ Rng::mix(c));
  return static_cast<double>(k >> 11) * 0x1.0p-53;
}

}  // namespace minreg
