// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_MEL_H_
#define CDRUD_MEL_H_

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "cdrud/common.h"

namespace cdrud {

double HzToMel(double hz);
double MelToHz(double mel);

// Triangular HTK-mel filters between 0 Hz and Nyquist, each row normalized
// to unit sum so that constant inputs map to the same constant.
class MelFilterbank {
 public:
  // Throws std::invalid_argument when n_filters >= dft_length / 2 or when a
  // filter covers no bin.
  static MelFilterbank Build(double sample_rate, std::size_t dft_length, std::size_t n_filters = kNumMelBands);

  const Eigen::MatrixXd& weights() const { return weights_; }
  std::size_t num_filters() const { return static_cast<std::size_t>(weights_.rows()); }
  std::size_t num_bands() const { return static_cast<std::size_t>(weights_.cols()); }
  double sample_rate() const { return sample_rate_; }
  std::size_t dft_length() const { return dft_length_; }

  Eigen::VectorXd Apply(std::span<const double> band_values) const;

 private:
  Eigen::MatrixXd weights_;
  double sample_rate_ = 0.0;
  std::size_t dft_length_ = 0;
};

}  // namespace cdrud

#endif  // CDRUD_MEL_H_
