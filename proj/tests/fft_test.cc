// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/fft.h"

#include <complex>
#include <vector>

#include <doctest.h>

#include "cdrud/random.h"
#include "oracles.h"

using namespace cdrud;

TEST_SUITE("fft") {
  TEST_CASE("forward transform matches the direct DFT") {
    for (std::size_t n : {1u, 2u, 8u, 64u, 512u}) {
      Xoshiro256 rng(n);
      std::vector<std::complex<double>> x(n);
      for (auto& v : x) v = {rng.Gaussian(), rng.Gaussian()};
      const auto ref = oracle::Dft(x);
      Fft(n).Forward(x);
      double err = 0.0;
      for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(x[k] - ref[k]));
      CHECK(err < 1e-9);
    }
  }

  TEST_CASE("inverse undoes forward") {
    Xoshiro256 rng(5);
    std::vector<std::complex<double>> x(256);
    for (auto& v : x) v = {rng.Gaussian(), rng.Gaussian()};
    auto y = x;
    const Fft fft(256);
    fft.Forward(y);
    fft.Inverse(y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) < 1e-12);
  }

  TEST_CASE("real transforms round trip") {
    Xoshiro256 rng(9);
    std::vector<double> x(128);
    for (auto& v : x) v = rng.Gaussian();
    const Fft fft(128);
    const auto bins = fft.ForwardReal(x);
    REQUIRE(bins.size() == 65);
    std::vector<std::complex<double>> cx(x.begin(), x.end());
    const auto ref = oracle::Dft(cx);
    for (std::size_t k = 0; k < bins.size(); ++k) CHECK(std::abs(bins[k] - ref[k]) < 1e-10);
    const auto back = fft.InverseReal(bins);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
  }

  TEST_CASE("sizes must be powers of two") {
    CHECK_THROWS_AS(Fft(0), std::invalid_argument);
    CHECK_THROWS_AS(Fft(12), std::invalid_argument);
    CHECK(IsPowerOfTwo(1024));
    CHECK_FALSE(IsPowerOfTwo(1000));
    CHECK(NextPowerOfTwo(1000) == 1024);
    CHECK(NextPowerOfTwo(1024) == 1024);
    std::vector<std::complex<double>> wrong(8);
    CHECK_THROWS(Fft(16).Forward(wrong));
  }
}
