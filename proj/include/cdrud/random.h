// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_RANDOM_H_
#define CDRUD_RANDOM_H_

#include <array>
#include <cstdint>
#include <string_view>

namespace cdrud {

// SplitMix64 output function. Used for seeding and for the stateless
// counter-based draws below.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic sub-seed: Mix64(master ^ Mix64(fnv1a64(tag) + index)).
// Every random stream in the library is derived through this function.
std::uint64_t DeriveSeed(std::uint64_t master, std::string_view tag, std::uint64_t index = 0);

// xoshiro256** seeded from a SplitMix64 sequence.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t Next();
  // 53-bit uniform in [0, 1).
  double Uniform();
  // Uniform integer in [0, n) by rejection (no modulo bias).
  std::uint64_t UniformInt(std::uint64_t n);
  // Box-Muller, both outputs used.
  double Gaussian();

 private:
  std::array<std::uint64_t, 4> s_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Map a 64-bit word to (0, 1].
double ToUnitOpen(std::uint64_t bits);

// Stateless standard normal keyed by (seed, a, b, c). Same key, same value,
// independent of call order.
double CounterGaussian(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c);

}  // namespace cdrud

#endif  // CDRUD_RANDOM_H_
