// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/features.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdrud/beamformer.h"

namespace cdrud {

Eigen::MatrixXd LogMelSpectrum(const Spectrogram& spectrum, const MelFilterbank& filterbank, double floor_ratio) {
  if (filterbank.num_bands() != spectrum.num_bands) throw DimensionError("filterbank does not match STFT bands");
  const Eigen::Index frames = static_cast<Eigen::Index>(spectrum.num_frames);
  const Eigen::Index bands = static_cast<Eigen::Index>(spectrum.num_bands);
  Eigen::MatrixXd power(bands, frames);
  for (Eigen::Index t = 0; t < frames; ++t) {
    for (Eigen::Index k = 0; k < bands; ++k) {
      power(k, t) = std::norm(spectrum.at(static_cast<std::size_t>(t), static_cast<std::size_t>(k)));
    }
  }
  Eigen::MatrixXd mel = (filterbank.weights() * power).transpose();
  const double mean = mel.size() > 0 ? mel.mean() : 0.0;
  const double floor = std::max(floor_ratio * mean, kAbsoluteLogFloor);
  return mel.unaryExpr([floor](double p) { return std::log(std::max(p, floor)); });
}

Eigen::MatrixXd Mvn(const Eigen::MatrixXd& frames, MvnStats* stats) {
  const Eigen::Index t = frames.rows();
  if (t < 2) throw std::invalid_argument("MVN needs at least two frames");
  MvnStats s;
  s.mean = frames.colwise().mean().transpose();
  const Eigen::MatrixXd centered = frames.rowwise() - s.mean.transpose();
  s.stddev = (centered.colwise().squaredNorm() / static_cast<double>(t)).cwiseSqrt().transpose();
  Eigen::MatrixXd out(frames.rows(), frames.cols());
  for (Eigen::Index d = 0; d < frames.cols(); ++d) {
    if (s.stddev(d) <= 1e-12 * (1.0 + std::abs(s.mean(d)))) {
      s.stddev(d) = 0.0;
      out.col(d).setZero();
    } else {
      out.col(d) = centered.col(d) / s.stddev(d);
    }
  }
  if (stats) *stats = std::move(s);
  return out;
}

Eigen::MatrixXd Deltas(const Eigen::MatrixXd& frames, int window) {
  if (window < 1) throw std::invalid_argument("delta window must be >= 1");
  const Eigen::Index t_max = frames.rows();
  if (t_max < 1) throw std::invalid_argument("deltas need at least one frame");
  double norm = 0.0;
  for (int k = 1; k <= window; ++k) norm += static_cast<double>(k * k);
  norm *= 2.0;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(frames.rows(), frames.cols());
  for (Eigen::Index t = 0; t < t_max; ++t) {
    for (int k = 1; k <= window; ++k) {
      const Eigen::Index ahead = std::min<Eigen::Index>(t + k, t_max - 1);
      const Eigen::Index behind = std::max<Eigen::Index>(t - k, 0);
      out.row(t) += static_cast<double>(k) * (frames.row(ahead) - frames.row(behind));
    }
  }
  return out / norm;
}

Eigen::MatrixXd Assemble(const Eigen::MatrixXd& logmel, const Eigen::MatrixXd& delta,
                         const Eigen::MatrixXd& diffuseness_mean) {
  if (logmel.rows() != delta.rows() || logmel.rows() != diffuseness_mean.rows()) {
    throw DimensionError("feature streams differ in frame count");
  }
  if (logmel.cols() != static_cast<Eigen::Index>(kNumMelBands) || delta.cols() != logmel.cols() ||
      diffuseness_mean.cols() != logmel.cols()) {
    throw DimensionError("each feature stream must have 24 dimensions");
  }
  Eigen::MatrixXd out(logmel.rows(), static_cast<Eigen::Index>(kFrameDim));
  out << logmel, delta, diffuseness_mean;
  return out;
}

Eigen::MatrixXd Splice(const Eigen::MatrixXd& frames, int context) {
  if (context < 0) throw std::invalid_argument("context must be non-negative");
  const Eigen::Index t_max = frames.rows();
  const Eigen::Index dim = frames.cols();
  const Eigen::Index width = dim * (2 * context + 1);
  Eigen::MatrixXd out(t_max, width);
  for (Eigen::Index t = 0; t < t_max; ++t) {
    for (int k = -context; k <= context; ++k) {
      const Eigen::Index src = std::clamp<Eigen::Index>(t + k, 0, t_max - 1);
      out.block(t, (k + context) * dim, 1, dim) = frames.row(src);
    }
  }
  return out;
}

UtteranceFeatures ExtractFeatures(const MultichannelSignal& signal, const FeaturePipelineOptions& options) {
  signal.Validate();
  StftConfig config = options.stft;
  config.sample_rate = signal.sample_rate;
  config.Validate();

  const MelFilterbank fb = MelFilterbank::Build(config.sample_rate, config.dft_length, kNumMelBands);
  const std::vector<Spectrogram> spectra = Stft(signal, config);

  UtteranceFeatures out;
  out.diffuseness = ExtractDiffuseness(spectra, signal.geometry, fb, options.diffuseness);

  const std::vector<double> beam = BeamformDelayAndSum(signal, options.look);
  const Eigen::MatrixXd logmel = LogMelSpectrum(Stft(beam, config), fb, options.log_floor_ratio);
  const Eigen::MatrixXd normalized = Mvn(logmel, &out.mvn);
  const Eigen::MatrixXd delta = Deltas(options.deltas_after_mvn ? normalized : logmel, options.delta_window);

  const Eigen::Index frames = logmel.rows();
  Eigen::MatrixXd diff_mean(frames, static_cast<Eigen::Index>(kNumMelBands));
  out.variances.resize(frames, static_cast<Eigen::Index>(kNumMelBands));
  for (Eigen::Index t = 0; t < frames; ++t) {
    diff_mean.row(t) = out.diffuseness[static_cast<std::size_t>(t)].mean.transpose();
    out.variances.row(t) = out.diffuseness[static_cast<std::size_t>(t)].variance.transpose();
  }
  out.frames = Assemble(normalized, delta, diff_mean);
  return out;
}

}  // namespace cdrud
