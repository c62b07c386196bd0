// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_FFT_H_
#define CDRUD_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cdrud {

// Iterative radix-2 complex FFT for power-of-two sizes.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  // X_k = sum_n x_n exp(-2 pi i k n / N)
  void Forward(std::span<std::complex<double>> data) const;
  // Includes the 1/N factor.
  void Inverse(std::span<std::complex<double>> data) const;

  // One-sided transform of a real sequence: returns N/2 + 1 bins.
  std::vector<std::complex<double>> ForwardReal(std::span<const double> input) const;
  // Inverse of ForwardReal; `bins` holds N/2 + 1 values, imaginary parts of
  // DC and Nyquist are ignored.
  std::vector<double> InverseReal(std::span<const std::complex<double>> bins) const;

 private:
  void Transform(std::span<std::complex<double>> data, bool inverse) const;

  std::size_t n_;
  std::vector<std::complex<double>> twiddles_;
  std::vector<std::size_t> bit_reverse_;
};

bool IsPowerOfTwo(std::size_t n);
std::size_t NextPowerOfTwo(std::size_t n);

}  // namespace cdrud

#endif  // CDRUD_FFT_H_
