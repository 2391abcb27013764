#pragma once

#include <cmath>
#include <cstdint>

namespace gazeload {

// splitmix64 finalizer. Bijective 64-bit mix, used to derive per-stream
// seeds from (seed, stream id) pairs so draws are independent of call order.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// xorshift64* generator (period 2^64 - 1). State must never be zero; a zero
// seed is remapped to a fixed nonzero constant.
class Xorshift64Star {
 public:
  explicit constexpr Xorshift64Star(std::uint64_t seed) noexcept
      : state_(seed != 0 ? seed : 0xd1b54a32d192ed03ULL) {}

  constexpr std::uint64_t next() noexcept {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_open_unit() noexcept {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform in [0, 1).
  double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Standard normal, Box-Muller cosine branch. Consumes two draws.
  double next_gaussian() noexcept {
    const double u1 = next_open_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t state_;
};

// Generator for an independent stream derived from (seed, stream).
inline Xorshift64Star stream_rng(std::uint64_t seed, std::uint64_t stream) noexcept {
  return Xorshift64Star(mix64(mix64(seed) ^ stream));
}

}  // namespace gazeload
