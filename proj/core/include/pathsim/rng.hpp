#pragma once

#include <cmath>
#include <cstdint>

namespace pathsim {

// Deterministic, splittable random stream. All randomness in the engines and
// tools flows from a single 64-bit seed; independent streams are derived by
// counter so parallel workers never share state. Output is identical across
// platforms (no std::*_distribution involved).
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : state_(seed) {
    // Warm up through splitmix so nearby seeds decorrelate.
    next_u64();
    next_u64();
  }

  RngStream(uint64_t seed, uint64_t stream) : RngStream(mix(seed, stream)) {}

  // Derive an independent child stream; counter-based, order-insensitive.
  RngStream stream(uint64_t index) const { return RngStream(mix(state_, index)); }

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, 2*pi).
  double next_angle() { return next_double() * 6.283185307179586476925286766559; }

  // Uniform integer in [0, bound) via rejection.
  uint64_t next_below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via Box-Muller; cached second value.
  double next_normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1, u2;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

 private:
  static uint64_t mix(uint64_t a, uint64_t b) {
    uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace pathsim
