// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_STFT_H_
#define CDRUD_STFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cdrud/scene.h"

namespace cdrud {

enum class WindowType { kSqrtHann, kHann, kRectangular };

WindowType ParseWindowType(const std::string& name);
std::string WindowTypeName(WindowType type);
// Periodic windows of length n.
std::vector<double> MakeWindow(WindowType type, std::size_t n);

struct StftConfig {
  std::size_t dft_length = 512;
  std::size_t hop = 128;
  WindowType window = WindowType::kSqrtHann;
  double sample_rate = 16000.0;

  std::size_t NumBands() const { return dft_length / 2 + 1; }
  double BandFrequency(std::size_t band) const {
    return static_cast<double>(band) * sample_rate / static_cast<double>(dft_length);
  }
  // Power-of-two dft_length, 0 < hop <= dft_length, positive rate.
  void Validate() const;
};

// floor((n - dft_length) / hop) + 1, or 0 when n < dft_length.
std::size_t NumFrames(std::size_t num_samples, const StftConfig& config);

struct Spectrogram {
  std::vector<std::complex<double>> bins;  // frames x bands, row-major
  std::size_t num_frames = 0;
  std::size_t num_bands = 0;
  StftConfig config;

  const std::complex<double>& at(std::size_t t, std::size_t k) const { return bins[t * num_bands + k]; }
  std::complex<double>& at(std::size_t t, std::size_t k) { return bins[t * num_bands + k]; }
  std::span<const std::complex<double>> frame(std::size_t t) const {
    return {bins.data() + t * num_bands, num_bands};
  }
};

// Windowed one-sided DFT per frame. The windowed frame is rotated by
// dft_length / 2 before the transform so its centre sits at time zero.
// Throws std::invalid_argument if the signal is shorter than one frame.
Spectrogram Stft(std::span<const double> signal, const StftConfig& config);
std::vector<Spectrogram> Stft(const MultichannelSignal& signal, const StftConfig& config);

}  // namespace cdrud

#endif  // CDRUD_STFT_H_
