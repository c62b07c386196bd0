// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/stft.h"

#include <cmath>
#include <stdexcept>

#include "cdrud/fft.h"

namespace cdrud {

WindowType ParseWindowType(const std::string& name) {
  if (name == "sqrthann") return WindowType::kSqrtHann;
  if (name == "hann") return WindowType::kHann;
  if (name == "rect") return WindowType::kRectangular;
  throw std::invalid_argument("unknown window: " + name);
}

std::string WindowTypeName(WindowType type) {
  switch (type) {
    case WindowType::kSqrtHann: return "sqrthann";
    case WindowType::kHann: return "hann";
    case WindowType::kRectangular: return "rect";
  }
  return "?";
}

std::vector<double> MakeWindow(WindowType type, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (type == WindowType::kRectangular) return w;
  for (std::size_t i = 0; i < n; ++i) {
    const double hann = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
    w[i] = type == WindowType::kHann ? hann : std::sqrt(hann);
  }
  return w;
}

void StftConfig::Validate() const {
  if (!IsPowerOfTwo(dft_length) || dft_length < 4) {
    throw std::invalid_argument("dft_length must be a power of two >= 4");
  }
  if (hop == 0 || hop > dft_length) throw std::invalid_argument("hop must satisfy 0 < hop <= dft_length");
  if (!(sample_rate > 0.0)) throw std::invalid_argument("sample rate must be positive");
}

std::size_t NumFrames(std::size_t num_samples, const StftConfig& config) {
  if (num_samples < config.dft_length) return 0;
  return (num_samples - config.dft_length) / config.hop + 1;
}

Spectrogram Stft(std::span<const double> signal, const StftConfig& config) {
  config.Validate();
  if (signal.size() < config.dft_length) throw std::invalid_argument("signal shorter than one STFT frame");
  const std::size_t n = config.dft_length;
  const std::size_t half = n / 2;
  const std::vector<double> window = MakeWindow(config.window, n);
  const Fft fft(n);

  Spectrogram out;
  out.config = config;
  out.num_frames = NumFrames(signal.size(), config);
  out.num_bands = config.NumBands();
  out.bins.resize(out.num_frames * out.num_bands);
  std::vector<std::complex<double>> buf(n);
  for (std::size_t t = 0; t < out.num_frames; ++t) {
    const std::size_t start = t * config.hop;
    for (std::size_t i = 0; i < n; ++i) buf[(i + half) % n] = signal[start + i] * window[i];
    fft.Forward(buf);
    for (std::size_t k = 0; k < out.num_bands; ++k) out.at(t, k) = buf[k];
  }
  return out;
}

std::vector<Spectrogram> Stft(const MultichannelSignal& signal, const StftConfig& config) {
  std::vector<Spectrogram> out;
  out.reserve(signal.NumChannels());
  for (const auto& ch : signal.channels) out.push_back(Stft(ch, config));
  return out;
}

}  // namespace cdrud
