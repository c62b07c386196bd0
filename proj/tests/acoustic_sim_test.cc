// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <vector>

#include <doctest.h>

#include "cdrud/coherence.h"
#include "cdrud/fractional_delay.h"
#include "cdrud/geometry.h"
#include "cdrud/random.h"
#include "cdrud/scene.h"
#include "cdrud/stft.h"
#include "cdrud/wav.h"
#include "oracles.h"

using namespace cdrud;

namespace {

double Db(double ratio) { return 10.0 * std::log10(ratio); }

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cdrud_acoustic_" + name);
}

SceneSpec Spec(double duration, std::uint64_t seed, double drr = 0.0) {
  SceneSpec s;
  s.duration_s = duration;
  s.seed = seed;
  s.drr_db = drr;
  return s;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("default array is an 8-mic circle with 8 cm spacing") {
    const ArrayGeometry g = ArrayGeometry::Default();
    REQUIRE(g.NumMics() == 8);
    CHECK(g.NumPairs() == 28);
    CHECK(g.PairDistance(0) == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(g.pair(0).first == 0);
    CHECK(g.pair(0).second == 1);
    CHECK(g.pair(27).first == 6);
    CHECK(g.pair(27).second == 7);
  }

  TEST_CASE("broadside and endfire delays") {
    const ArrayGeometry g({{-0.04, 0, 0}, {0.04, 0, 0}});
    const Direction broadside{kPi / 2, 0.0};
    CHECK(std::abs(g.ArrivalDelay(0, broadside) - g.ArrivalDelay(1, broadside)) < 1e-15);
    const Direction endfire{0.0, 0.0};
    const double tdoa = g.ArrivalDelay(0, endfire) - g.ArrivalDelay(1, endfire);
    CHECK(tdoa == doctest::Approx(0.08 / kDefaultSpeedOfSound).epsilon(1e-12));
  }

  TEST_CASE("geometry text round trip and validation") {
    const ArrayGeometry g = ArrayGeometry::UniformCircle(4, 0.05, 340.0);
    const ArrayGeometry back = ParseGeometry(FormatGeometry(g));
    CHECK(back == g);
    CHECK(back.speed_of_sound() == 340.0);
    CHECK_THROWS_AS(ArrayGeometry({{0, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry({{0, 0, 0}, {0, 0, 0}}), std::invalid_argument);
    CHECK_THROWS(ParseGeometry("0 0\n"));
  }
}

TEST_SUITE("fractional_delay") {
  TEST_CASE("integer delays are exact shifts") {
    std::vector<double> x(100);
    Xoshiro256 rng(1);
    for (auto& v : x) v = rng.Gaussian();
    const auto y = FractionalDelay(x, 3.0);
    for (std::size_t n = 0; n < 3; ++n) CHECK(y[n] == 0.0);
    for (std::size_t n = 3; n < x.size(); ++n) CHECK(y[n] == doctest::Approx(x[n - 3]).epsilon(1e-12));
  }

  TEST_CASE("half-sample delay of a low-frequency sinusoid") {
    const double f = 0.02;  // cycles per sample
    std::vector<double> x(400);
    for (std::size_t n = 0; n < x.size(); ++n) x[n] = std::sin(2 * kPi * f * n);
    const auto y = FractionalDelay(x, 0.5);
    for (std::size_t n = 100; n < 300; ++n) CHECK(y[n] == doctest::Approx(std::sin(2 * kPi * f * (n - 0.5))).epsilon(1e-3));
  }
}

TEST_SUITE("acoustic_sim") {
  TEST_CASE("isotropic field has equal power on every channel") {
    const ArrayGeometry g = ArrayGeometry::Default();
    const auto field = GenerateIsotropicField(Spec(2.0, 3), g);
    REQUIRE(field.NumChannels() == 8);
    CHECK(MeanPower(field) == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& ch : field.channels) CHECK(std::abs(Db(ChannelPower(ch))) < 0.1);
  }

  TEST_CASE("plane wave is unit power on every channel") {
    const ArrayGeometry g = ArrayGeometry::Default();
    const auto pw = GeneratePlaneWave(Spec(2.0, 3), g);
    for (const auto& ch : pw.channels) CHECK(std::abs(Db(ChannelPower(ch))) < 0.1);
  }

  TEST_CASE("generation is deterministic in the seed") {
    const ArrayGeometry g = ArrayGeometry::Default();
    const auto a = GenerateScene(Spec(0.5, 9, 3.0), g);
    const auto b = GenerateScene(Spec(0.5, 9, 3.0), g);
    const auto c = GenerateScene(Spec(0.5, 10, 3.0), g);
    CHECK(a.channels == b.channels);
    CHECK(a.channels != c.channels);
  }

  TEST_CASE("mixing honours the direct-to-diffuse ratio") {
    const ArrayGeometry g = ArrayGeometry::Default();
    const auto direct = GeneratePlaneWave(Spec(1.0, 1), g);
    const auto diffuse = GenerateIsotropicField(Spec(1.0, 2), g);

    SUBCASE("infinite ratios select one component") {
      CHECK(MixScene(direct, diffuse, std::numeric_limits<double>::infinity()).channels == direct.channels);
      CHECK(MixScene(direct, diffuse, -std::numeric_limits<double>::infinity()).channels == diffuse.channels);
    }
    SUBCASE("0 dB gives equal component powers") {
      const auto mixed = MixScene(direct, diffuse, 0.0);
      MultichannelSignal residual = mixed;
      for (std::size_t i = 0; i < residual.NumChannels(); ++i) {
        for (std::size_t n = 0; n < residual.NumSamples(); ++n) residual.channels[i][n] -= direct.channels[i][n];
      }
      CHECK(std::abs(Db(MeanPower(direct) / MeanPower(residual))) < 0.1);
    }
    SUBCASE("+10 dB scales the diffuse part to -10 dB") {
      const auto mixed = MixScene(direct, diffuse, 10.0);
      MultichannelSignal residual = mixed;
      for (std::size_t i = 0; i < residual.NumChannels(); ++i) {
        for (std::size_t n = 0; n < residual.NumSamples(); ++n) residual.channels[i][n] -= direct.channels[i][n];
      }
      CHECK(Db(MeanPower(residual) / MeanPower(direct)) == doctest::Approx(-10.0).epsilon(1e-9));
    }
  }

  TEST_CASE("too few diffuse directions are rejected") {
    CHECK_THROWS_AS(GenerateIsotropicField(Spec(0.1, 1), ArrayGeometry::Default(), 16), std::invalid_argument);
  }

  TEST_CASE("Fibonacci directions are unit vectors with zero mean") {
    const auto dirs = FibonacciSphere(512);
    Vec3 sum;
    for (const auto& d : dirs) {
      CHECK(Dot(d, d) == doctest::Approx(1.0).epsilon(1e-12));
      sum.x += d.x;
      sum.y += d.y;
      sum.z += d.z;
    }
    CHECK(std::abs(sum.x) / 512 < 0.01);
    CHECK(std::abs(sum.y) / 512 < 0.01);
    CHECK(std::abs(sum.z) / 512 < 0.01);
  }

  TEST_CASE("long isotropic field matches the sinc coherence on every pair") {
    const ArrayGeometry g = ArrayGeometry::Default();
    const auto field = GenerateIsotropicField(Spec(40.0, 1), g);
    const StftConfig cfg;
    const auto spectra = Stft(field, cfg);
    double worst = 0.0;
    for (std::size_t m = 0; m < g.NumPairs(); ++m) {
      const auto [i, j] = g.pair(m);
      const auto gamma = LongTermCoherence(spectra[i], spectra[j]);
      const double d = g.PairDistance(m);
      for (std::size_t k = 1; k < cfg.NumBands(); ++k) {
        const double f = cfg.BandFrequency(k);
        if (2 * kPi * f * d / g.speed_of_sound() >= 2 * kPi) break;
        const double ref = oracle::IsotropicCoherence(d, f, g.speed_of_sound());
        worst = std::max(worst, std::abs(gamma[k].real() - ref));
      }
    }
    CHECK(worst <= 0.08);
  }

  TEST_CASE("two-mic field: full coherence at low frequency, none at the first zero") {
    const double d = 0.1;
    const ArrayGeometry g({{0, 0, 0}, {d, 0, 0}});
    const auto field = GenerateIsotropicField(Spec(20.0, 4), g);
    const StftConfig cfg;
    const auto spectra = Stft(field, cfg);
    const auto gamma = LongTermCoherence(spectra[0], spectra[1]);
    CHECK(std::abs(gamma[1]) > 0.95);
    // omega d / c = pi at f = c / (2 d).
    const double f0 = g.speed_of_sound() / (2 * d);
    const auto k0 = static_cast<std::size_t>(std::lround(f0 / cfg.BandFrequency(1)));
    CHECK(std::abs(gamma[k0].real()) < 0.1);
  }
}

TEST_SUITE("wav") {
  TEST_CASE("float32 round trip is bit exact for float-representable samples") {
    std::vector<std::vector<double>> ch(3, std::vector<double>(257));
    Xoshiro256 rng(5);
    for (auto& c : ch) {
      for (auto& v : c) v = static_cast<float>(0.3 * rng.Gaussian());
    }
    const auto path = TempPath("f32.wav");
    WriteWav(path, ch, 16000.0, WavEncoding::kFloat32);
    const WavData back = ReadWav(path);
    CHECK(back.sample_rate == 16000.0);
    CHECK(back.encoding == WavEncoding::kFloat32);
    CHECK(back.channels == ch);
    std::filesystem::remove(path);
  }

  TEST_CASE("pcm16 round trip within one quantisation step") {
    std::vector<std::vector<double>> ch(2, std::vector<double>(500));
    Xoshiro256 rng(6);
    for (auto& c : ch) {
      for (auto& v : c) v = 0.9 * (2 * rng.Uniform() - 1);
    }
    const auto path = TempPath("pcm.wav");
    WriteWav(path, ch, 8000.0, WavEncoding::kPcm16);
    const WavData back = ReadWav(path);
    CHECK(back.encoding == WavEncoding::kPcm16);
    double worst = 0.0;
    for (std::size_t c = 0; c < ch.size(); ++c) {
      for (std::size_t n = 0; n < ch[c].size(); ++n) worst = std::max(worst, std::abs(back.channels[c][n] - ch[c][n]));
    }
    CHECK(worst <= 1.0 / 32768.0);
    std::filesystem::remove(path);
  }

  TEST_CASE("channel count must match the geometry") {
    const auto path = TempPath("eight.wav");
    const auto field = GenerateIsotropicField(Spec(0.1, 1), ArrayGeometry::Default());
    WriteWav(path, field);
    CHECK_NOTHROW(ReadWav(path, ArrayGeometry::Default()));
    CHECK_THROWS_AS(ReadWav(path, ArrayGeometry::UniformCircle(4, 0.08)), DimensionError);
    std::filesystem::remove(path);
  }

  TEST_CASE("malformed and missing files") {
    const auto path = TempPath("bad.wav");
    {
      std::FILE* f = std::fopen(path.c_str(), "wb");
      std::fputs("not a wave file at all", f);
      std::fclose(f);
    }
    CHECK_THROWS_AS(ReadWav(path), FormatError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(ReadWav(TempPath("missing.wav")), IoError);
  }
}
