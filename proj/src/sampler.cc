// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/sampler.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdrud/random.h"

namespace cdrud {

FeatureDistribution FeatureDistribution::FromFrame(const Eigen::VectorXd& frame,
                                                   const Eigen::VectorXd& diffuseness_variance) {
  if (frame.size() != static_cast<Eigen::Index>(kFrameDim)) throw DimensionError("frame must have 72 dimensions");
  if (diffuseness_variance.size() != static_cast<Eigen::Index>(kNumMelBands)) {
    throw DimensionError("diffuseness variance must have 24 dimensions");
  }
  FeatureDistribution d;
  d.mean = frame;
  d.variance = Eigen::VectorXd::Zero(frame.size());
  d.variance.segment(static_cast<Eigen::Index>(kDiffusenessOffset), static_cast<Eigen::Index>(kNumMelBands)) =
      diffuseness_variance;
  d.Validate();
  return d;
}

void FeatureDistribution::Validate() const {
  if (mean.size() != variance.size()) throw DimensionError("mean and variance differ in length");
  for (Eigen::Index i = 0; i < variance.size(); ++i) {
    if (!std::isfinite(mean(i)) || !std::isfinite(variance(i))) {
      throw std::invalid_argument("distribution has non-finite entries");
    }
    if (variance(i) < 0.0) throw std::invalid_argument("negative variance at dim " + std::to_string(i));
  }
}

ClipMode ParseClipMode(const std::string& name) {
  if (name == "none") return ClipMode::kNone;
  if (name == "range") return ClipMode::kRange;
  throw std::invalid_argument("unknown clip mode: " + name);
}

std::string ClipModeName(ClipMode mode) { return mode == ClipMode::kNone ? "none" : "range"; }

void ApplyClip(Eigen::Ref<Eigen::VectorXd> sample, ClipMode mode, double cdr_max) {
  if (mode == ClipMode::kNone) return;
  if (sample.size() % static_cast<Eigen::Index>(kFrameDim) != 0) {
    throw DimensionError("range clipping needs whole 72-dim frames");
  }
  const double lo = 1.0 / (1.0 + cdr_max) + kClipEpsilon;
  const double hi = 1.0 - kClipEpsilon;
  for (Eigen::Index base = 0; base < sample.size(); base += static_cast<Eigen::Index>(kFrameDim)) {
    for (Eigen::Index d = 0; d < static_cast<Eigen::Index>(kNumMelBands); ++d) {
      double& v = sample(base + static_cast<Eigen::Index>(kDiffusenessOffset) + d);
      v = std::clamp(v, lo, hi);
    }
  }
}

double SampleNoise(std::uint64_t seed, std::uint64_t frame, std::uint64_t sample, std::uint64_t dim) {
  return CounterGaussian(seed, frame, sample, dim);
}

SampleSet DrawSamples(const FeatureDistribution& distribution, std::size_t num_samples, std::uint64_t seed,
                      std::uint64_t frame_index, ClipMode clip) {
  distribution.Validate();
  if (num_samples < 1) throw std::invalid_argument("need at least one sample");
  const Eigen::Index dim = distribution.mean.size();
  SampleSet out;
  out.seed = seed;
  out.frame_index = frame_index;
  out.samples.resize(static_cast<Eigen::Index>(num_samples), dim);
  const Eigen::VectorXd stddev = distribution.variance.cwiseSqrt();
  Eigen::VectorXd z(dim);
  for (std::size_t l = 0; l < num_samples; ++l) {
    for (Eigen::Index d = 0; d < dim; ++d) {
      z(d) = stddev(d) == 0.0 ? distribution.mean(d)
                              : distribution.mean(d) + stddev(d) * SampleNoise(seed, frame_index, l,
                                                                               static_cast<std::uint64_t>(d));
    }
    ApplyClip(z, clip);
    out.samples.row(static_cast<Eigen::Index>(l)) = z.transpose();
  }
  return out;
}

UtteranceSampler::UtteranceSampler(Eigen::MatrixXd frames, Eigen::MatrixXd diffuseness_variances, int context,
                                   std::uint64_t seed, ClipMode clip)
    : frames_(std::move(frames)), context_(context), seed_(seed), clip_(clip) {
  if (frames_.cols() != static_cast<Eigen::Index>(kFrameDim)) throw DimensionError("frames must be 72-dim");
  if (diffuseness_variances.rows() != frames_.rows() ||
      diffuseness_variances.cols() != static_cast<Eigen::Index>(kNumMelBands)) {
    throw DimensionError("variance matrix must be frames x 24");
  }
  if (frames_.rows() < 1) throw std::invalid_argument("utterance has no frames");
  if (context_ < 0) throw std::invalid_argument("context must be non-negative");
  if ((diffuseness_variances.array() < 0.0).any() || !diffuseness_variances.allFinite()) {
    throw std::invalid_argument("variances must be finite and non-negative");
  }
  stddev_ = Eigen::MatrixXd::Zero(frames_.rows(), frames_.cols());
  stddev_.middleCols(static_cast<Eigen::Index>(kDiffusenessOffset), static_cast<Eigen::Index>(kNumMelBands)) =
      diffuseness_variances.cwiseSqrt();
}

Eigen::VectorXd UtteranceSampler::SplicedMean(std::size_t t) const {
  const Eigen::Index dim = frames_.cols();
  const Eigen::Index last = frames_.rows() - 1;
  Eigen::VectorXd out(input_dim());
  for (int k = -context_; k <= context_; ++k) {
    const Eigen::Index src = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(t) + k, 0, last);
    out.segment((k + context_) * dim, dim) = frames_.row(src).transpose();
  }
  return out;
}

SampleSet UtteranceSampler::SplicedSamples(std::size_t t, std::size_t num_samples) const {
  if (t >= num_frames()) throw std::out_of_range("frame index out of range");
  if (num_samples < 1) throw std::invalid_argument("need at least one sample");
  const Eigen::Index dim = frames_.cols();
  const Eigen::Index last = frames_.rows() - 1;
  SampleSet out;
  out.seed = seed_;
  out.frame_index = t;
  out.samples.resize(static_cast<Eigen::Index>(num_samples), input_dim());
  Eigen::VectorXd z(dim);
  for (std::size_t l = 0; l < num_samples; ++l) {
    for (int k = -context_; k <= context_; ++k) {
      const Eigen::Index src = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(t) + k, 0, last);
      for (Eigen::Index d = 0; d < dim; ++d) {
        const double s = stddev_(src, d);
        z(d) = s == 0.0 ? frames_(src, d)
                        : frames_(src, d) + s * SampleNoise(seed_, static_cast<std::uint64_t>(src), l,
                                                            static_cast<std::uint64_t>(d));
      }
      ApplyClip(z, clip_);
      out.samples.block(static_cast<Eigen::Index>(l), (k + context_) * dim, 1, dim) = z.transpose();
    }
  }
  return out;
}

}  // namespace cdrud
