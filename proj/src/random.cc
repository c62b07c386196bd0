// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/random.h"

#include <cmath>

#include "cdrud/common.h"

namespace cdrud {

namespace {

constexpr std::uint64_t Rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t Fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  return Mix64(master ^ Mix64(Fnv1a64(tag) + index));
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) {
    word = Mix64(x);
    x += 0x9e3779b97f4a7c15ULL;
  }
}

std::uint64_t Xoshiro256::Next() {
  const std::uint64_t result = Rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = Rotl(s_[3], 45);
  return result;
}

double Xoshiro256::Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

std::uint64_t Xoshiro256::UniformInt(std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = Next();
  } while (v >= limit);
  return v % n;
}

double Xoshiro256::Gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = ToUnitOpen(Next());
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

double ToUnitOpen(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double CounterGaussian(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  const std::uint64_t key = Mix64(Mix64(Mix64(seed ^ 0x5851f42d4c957f2dULL) ^ a) ^ b) ^ c;
  const std::uint64_t w1 = Mix64(key);
  const std::uint64_t w2 = Mix64(key ^ 0xd1b54a32d192ed03ULL);
  const double r = std::sqrt(-2.0 * std::log(ToUnitOpen(w1)));
  return r * std::cos(2.0 * kPi * (static_cast<double>(w2 >> 11) * 0x1.0p-53));
}

}  // namespace cdrud
