// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/mel.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cdrud {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank MelFilterbank::Build(double sample_rate, std::size_t dft_length, std::size_t n_filters) {
  if (!(sample_rate > 0.0)) throw std::invalid_argument("sample rate must be positive");
  if (n_filters == 0 || n_filters >= dft_length / 2) {
    throw std::invalid_argument("filter count must satisfy 0 < n_filters < dft_length / 2");
  }
  const std::size_t bands = dft_length / 2 + 1;
  const double mel_max = HzToMel(sample_rate / 2.0);
  std::vector<double> edges(n_filters + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_max * static_cast<double>(i) / static_cast<double>(n_filters + 1);
  }

  MelFilterbank fb;
  fb.sample_rate_ = sample_rate;
  fb.dft_length_ = dft_length;
  fb.weights_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_filters), static_cast<Eigen::Index>(bands));
  for (std::size_t k = 0; k < bands; ++k) {
    const double mel = HzToMel(static_cast<double>(k) * sample_rate / static_cast<double>(dft_length));
    for (std::size_t j = 0; j < n_filters; ++j) {
      const double lo = edges[j], mid = edges[j + 1], hi = edges[j + 2];
      double w = 0.0;
      if (mel > lo && mel <= mid) w = (mel - lo) / (mid - lo);
      else if (mel > mid && mel < hi) w = (hi - mel) / (hi - mid);
      fb.weights_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = w;
    }
  }
  for (Eigen::Index j = 0; j < fb.weights_.rows(); ++j) {
    const double sum = fb.weights_.row(j).sum();
    if (!(sum > 0.0)) {
      throw std::invalid_argument("mel filter " + std::to_string(j) + " is narrower than one DFT bin");
    }
    fb.weights_.row(j) /= sum;
  }
  return fb;
}

Eigen::VectorXd MelFilterbank::Apply(std::span<const double> band_values) const {
  if (band_values.size() != num_bands()) throw DimensionError("band count does not match filterbank");
  Eigen::Map<const Eigen::VectorXd> v(band_values.data(), static_cast<Eigen::Index>(band_values.size()));
  return weights_ * v;
}

}  // namespace cdrud
