// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_SAMPLER_H_
#define CDRUD_SAMPLER_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "cdrud/common.h"

namespace cdrud {

// Diagonal Gaussian N(mean, diag(variance)) over an observation vector.
struct FeatureDistribution {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;

  // 72-dim frame with the 24 diffuseness variances placed on dims 48..71
  // and zeros elsewhere.
  static FeatureDistribution FromFrame(const Eigen::VectorXd& frame, const Eigen::VectorXd& diffuseness_variance);

  // Throws DimensionError for unequal lengths and std::invalid_argument for
  // non-finite entries or negative variances.
  void Validate() const;
};

enum class ClipMode { kNone, kRange };

ClipMode ParseClipMode(const std::string& name);
std::string ClipModeName(ClipMode mode);

// Offset from the open range ends used by ClipMode::kRange.
inline constexpr double kClipEpsilon = 1e-9;

// kNone leaves the sample alone; kRange clamps the diffuseness dims
// (48..71) of a frame-sized sample into
// [1/(1+cdr_max) + eps, 1 - eps].
void ApplyClip(Eigen::Ref<Eigen::VectorXd> sample, ClipMode mode, double cdr_max = kDefaultCdrMax);

struct SampleSet {
  Eigen::MatrixXd samples;  // L x dim, row l is z^(l)
  std::uint64_t seed = 0;
  std::uint64_t frame_index = 0;

  std::size_t size() const { return static_cast<std::size_t>(samples.rows()); }
};

// Standard normal keyed by (seed, frame, sample, dim).
double SampleNoise(std::uint64_t seed, std::uint64_t frame, std::uint64_t sample, std::uint64_t dim);

// z[l][d] = mean[d] + sqrt(variance[d]) * SampleNoise(seed, frame, l, d).
// Dimensions with zero variance equal the mean exactly.
SampleSet DrawSamples(const FeatureDistribution& distribution, std::size_t num_samples, std::uint64_t seed,
                      std::uint64_t frame_index = 0, ClipMode clip = ClipMode::kNone);

// Draws sampled utterances and splices them. Frame t of sample l is always
// the same draw, whichever spliced row it lands in.
class UtteranceSampler {
 public:
  // frames: T x 72; diffuseness_variances: T x 24.
  UtteranceSampler(Eigen::MatrixXd frames, Eigen::MatrixXd diffuseness_variances, int context, std::uint64_t seed,
                   ClipMode clip = ClipMode::kNone);

  std::size_t num_frames() const { return static_cast<std::size_t>(frames_.rows()); }
  Eigen::Index input_dim() const { return frames_.cols() * (2 * context_ + 1); }

  // L x input_dim spliced inputs for frame t.
  SampleSet SplicedSamples(std::size_t t, std::size_t num_samples) const;
  // The unperturbed spliced input for frame t.
  Eigen::VectorXd SplicedMean(std::size_t t) const;

 private:
  Eigen::MatrixXd frames_;
  Eigen::MatrixXd stddev_;  // T x 72
  int context_;
  std::uint64_t seed_;
  ClipMode clip_;
};

}  // namespace cdrud

#endif  // CDRUD_SAMPLER_H_
