// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/scene.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "cdrud/fft.h"
#include "cdrud/random.h"

namespace cdrud {

void MultichannelSignal::Validate() const {
  if (channels.empty()) throw std::invalid_argument("signal has no channels");
  if (!(sample_rate > 0.0)) throw std::invalid_argument("sample rate must be positive");
  const std::size_t n = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != n) throw DimensionError("channels differ in length");
    for (double v : ch) {
      if (!std::isfinite(v)) throw std::invalid_argument("signal contains non-finite samples");
    }
  }
  if (channels.size() != geometry.NumMics()) {
    throw DimensionError("signal has " + std::to_string(channels.size()) + " channels but geometry has " +
                         std::to_string(geometry.NumMics()) + " microphones");
  }
}

void SceneSpec::Validate() const {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) throw std::invalid_argument("duration must be positive");
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) throw std::invalid_argument("sample rate must be positive");
  if (!direct_doa.IsFinite()) throw std::invalid_argument("direction of arrival must be finite");
  if (std::isnan(drr_db)) throw std::invalid_argument("DRR must not be NaN");
  if (NumSamples() == 0) throw std::invalid_argument("scene shorter than one sample");
}

std::size_t SceneSpec::NumSamples() const {
  return static_cast<std::size_t>(std::llround(duration_s * sample_rate));
}

double ChannelPower(const std::vector<double>& channel) {
  if (channel.empty()) return 0.0;
  double acc = 0.0;
  for (double v : channel) acc += v * v;
  return acc / static_cast<double>(channel.size());
}

double MeanPower(const MultichannelSignal& signal) {
  if (signal.channels.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& ch : signal.channels) acc += ChannelPower(ch);
  return acc / static_cast<double>(signal.channels.size());
}

std::vector<Vec3> FibonacciSphere(std::size_t n) {
  std::vector<Vec3> dirs;
  dirs.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(k);
    dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return dirs;
}

MultichannelSignal GeneratePlaneWave(const SceneSpec& spec, const ArrayGeometry& geometry) {
  spec.Validate();
  const std::size_t n = spec.NumSamples();
  std::vector<double> delays(geometry.NumMics());
  double max_delay = 0.0;
  for (std::size_t i = 0; i < geometry.NumMics(); ++i) {
    delays[i] = geometry.ArrivalDelay(i, spec.direct_doa) * spec.sample_rate;
    max_delay = std::max(max_delay, std::abs(delays[i]));
  }
  // The source is delayed by linear phase on a circular frame; the padding
  // keeps wrapped samples out of the cropped output.
  const std::size_t pad = static_cast<std::size_t>(std::ceil(max_delay)) + 1;
  const std::size_t nfft = NextPowerOfTwo(n + 2 * pad);
  const std::size_t nbins = nfft / 2 + 1;

  Xoshiro256 rng(DeriveSeed(spec.seed, "direct"));
  std::vector<double> source(nfft);
  for (double& v : source) v = rng.Gaussian();
  const Fft fft(nfft);
  std::vector<std::complex<double>> bins = fft.ForwardReal(source);
  // A real-valued delay cannot be applied to the Nyquist bin.
  bins[nbins - 1] = 0.0;

  MultichannelSignal out;
  out.sample_rate = spec.sample_rate;
  out.geometry = geometry;
  std::vector<std::complex<double>> shifted(nbins);
  for (std::size_t i = 0; i < geometry.NumMics(); ++i) {
    const double step = -2.0 * kPi * delays[i] / static_cast<double>(nfft);
    for (std::size_t b = 0; b < nbins; ++b) shifted[b] = bins[b] * std::polar(1.0, step * static_cast<double>(b));
    const std::vector<double> time = fft.InverseReal(shifted);
    out.channels.emplace_back(time.begin() + static_cast<long>(pad), time.begin() + static_cast<long>(pad + n));
  }
  const double p = MeanPower(out);
  if (p > 0.0) {
    const double g = 1.0 / std::sqrt(p);
    for (auto& ch : out.channels) for (double& v : ch) v *= g;
  }
  return out;
}

MultichannelSignal GenerateIsotropicField(const SceneSpec& spec, const ArrayGeometry& geometry,
                                          std::size_t n_directions) {
  spec.Validate();
  if (n_directions < 64) throw std::invalid_argument("isotropic field needs at least 64 directions");
  const std::size_t n = spec.NumSamples();
  const std::size_t nfft = NextPowerOfTwo(std::max<std::size_t>(n, 2));
  const std::size_t nbins = nfft / 2 + 1;
  const std::size_t c = geometry.NumMics();

  // Each direction carries an independent white source; delays are applied
  // as exact linear phase on a circular frame of nfft samples.
  std::vector<std::vector<std::complex<double>>> spectra(c, std::vector<std::complex<double>>(nbins));
  std::vector<std::complex<double>> source(nbins);
  const std::vector<Vec3> dirs = FibonacciSphere(n_directions);
  const double c_sound = geometry.speed_of_sound();
  constexpr std::size_t kResync = 512;
  for (std::size_t k = 0; k < n_directions; ++k) {
    Xoshiro256 rng(DeriveSeed(spec.seed, "diffuse", k));
    source[0] = 0.0;
    source[nbins - 1] = 0.0;
    for (std::size_t b = 1; b + 1 < nbins; ++b) source[b] = {rng.Gaussian(), rng.Gaussian()};
    for (std::size_t ch = 0; ch < c; ++ch) {
      const double tau = -Dot(geometry.mic(ch), dirs[k]) / c_sound * spec.sample_rate;
      const double step = -2.0 * kPi * tau / static_cast<double>(nfft);
      const std::complex<double> rot = std::polar(1.0, step);
      std::complex<double> w = 1.0;
      auto& acc = spectra[ch];
      for (std::size_t b = 1; b + 1 < nbins; ++b) {
        if (b % kResync == 0) w = std::polar(1.0, step * static_cast<double>(b));
        else w *= rot;
        acc[b] += source[b] * w;
      }
    }
  }

  Fft fft(nfft);
  MultichannelSignal out;
  out.sample_rate = spec.sample_rate;
  out.geometry = geometry;
  for (std::size_t ch = 0; ch < c; ++ch) {
    std::vector<double> time = fft.InverseReal(spectra[ch]);
    time.resize(n);
    out.channels.push_back(std::move(time));
  }
  const double p = MeanPower(out);
  if (p > 0.0) {
    const double g = 1.0 / std::sqrt(p);
    for (auto& ch : out.channels) for (double& v : ch) v *= g;
  }
  return out;
}

MultichannelSignal MixScene(const MultichannelSignal& direct, const MultichannelSignal& diffuse,
                            double drr_db) {
  if (std::isnan(drr_db)) throw std::invalid_argument("DRR must not be NaN");
  if (direct.NumChannels() != diffuse.NumChannels() || direct.NumSamples() != diffuse.NumSamples()) {
    throw DimensionError("direct and diffuse signals differ in shape");
  }
  if (direct.sample_rate != diffuse.sample_rate) throw DimensionError("sample rates differ");
  if (!(direct.geometry == diffuse.geometry)) throw DimensionError("geometries differ");

  if (drr_db == std::numeric_limits<double>::infinity()) return direct;
  if (drr_db == -std::numeric_limits<double>::infinity()) return diffuse;

  const double p_direct = MeanPower(direct);
  const double p_diffuse = MeanPower(diffuse);
  if (!(p_diffuse > 0.0)) throw std::invalid_argument("diffuse signal has zero power");
  const double ratio = std::pow(10.0, drr_db / 10.0);
  const double gain = std::sqrt(p_direct / (p_diffuse * ratio));

  MultichannelSignal out = direct;
  for (std::size_t ch = 0; ch < out.NumChannels(); ++ch) {
    for (std::size_t i = 0; i < out.NumSamples(); ++i) out.channels[ch][i] += gain * diffuse.channels[ch][i];
  }
  return out;
}

MultichannelSignal GenerateScene(const SceneSpec& spec, const ArrayGeometry& geometry,
                                 std::size_t n_directions) {
  const double inf = std::numeric_limits<double>::infinity();
  if (spec.drr_db == -inf) return GenerateIsotropicField(spec, geometry, n_directions);
  if (spec.drr_db == inf) return GeneratePlaneWave(spec, geometry);
  return MixScene(GeneratePlaneWave(spec, geometry), GenerateIsotropicField(spec, geometry, n_directions),
                  spec.drr_db);
}

}  // namespace cdrud
