#pragma once

#include <cstdint>
#include <random>

namespace priorlab {

// SplitMix64 finalizer.  Used only to derive child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of the `index`-th child stream of `parent`.  Children of one parent are
// pairwise distinct with overwhelming probability and never share state.
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

// A single-owner random stream backed by the 64-bit Mersenne Twister
// (std::mt19937_64, whose output sequence is fixed by the C++ standard).
// All variate transforms are implemented here rather than through
// <random>'s distributions, whose algorithms are implementation-defined, so a
// seed reproduces the same draws on every toolchain.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  RngStream(const RngStream&) = delete;
  RngStream& operator=(const RngStream&) = delete;
  RngStream(RngStream&&) = default;
  RngStream& operator=(RngStream&&) = default;

  std::uint64_t seed() const noexcept { return seed_; }

  RngStream child(std::uint64_t index) const {
    return RngStream(derive_seed(seed_, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return u;
  }

  // Standard normal via the Marsaglia polar method (spare value cached).
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 uses the boost
  // G(a) = G(a+1) * U^(1/a).
  double gamma(double shape);

  // log of a Gamma(shape, 1) draw, accurate for very small shapes where the
  // draw itself would underflow.
  double log_gamma_variate(double shape);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace priorlab
