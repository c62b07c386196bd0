// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/fft.h"

#include <stdexcept>
#include <utility>

#include "cdrud/common.h"

namespace cdrud {

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t NextPowerOfTwo(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

Fft::Fft(std::size_t n) : n_(n), twiddles_(n / 2), bit_reverse_(n) {
  if (!IsPowerOfTwo(n)) throw std::invalid_argument("FFT size must be a power of two");
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddles_[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  }
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
}

void Fft::Transform(std::span<std::complex<double>> data, bool inverse) const {
  if (data.size() != n_) throw std::invalid_argument("FFT buffer size mismatch");
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bit_reverse_[i]) std::swap(data[i], data[bit_reverse_[i]]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = twiddles_[j * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> t = w * data[start + j + half];
        data[start + j + half] = data[start + j] - t;
        data[start + j] += t;
      }
    }
  }
}

void Fft::Forward(std::span<std::complex<double>> data) const { Transform(data, false); }

void Fft::Inverse(std::span<std::complex<double>> data) const {
  Transform(data, true);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v *= scale;
}

std::vector<std::complex<double>> Fft::ForwardReal(std::span<const double> input) const {
  if (input.size() != n_) throw std::invalid_argument("FFT input size mismatch");
  std::vector<std::complex<double>> buf(input.begin(), input.end());
  Forward(buf);
  buf.resize(n_ / 2 + 1);
  return buf;
}

std::vector<double> Fft::InverseReal(std::span<const std::complex<double>> bins) const {
  if (bins.size() != n_ / 2 + 1) throw std::invalid_argument("FFT bin count mismatch");
  std::vector<std::complex<double>> buf(n_);
  buf[0] = bins[0].real();
  buf[n_ / 2] = bins[n_ / 2].real();
  for (std::size_t k = 1; k < n_ / 2; ++k) {
    buf[k] = bins[k];
    buf[n_ - k] = std::conj(bins[k]);
  }
  Inverse(buf);
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = buf[i].real();
  return out;
}

}  // namespace cdrud
