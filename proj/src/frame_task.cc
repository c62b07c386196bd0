// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/frame_task.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdrud/common.h"
#include "cdrud/random.h"

namespace cdrud {

FrameTask::FrameTask(const FrameTaskConfig& config, std::uint64_t task_seed) : config_(config) {
  if (config_.num_groups < 1) throw std::invalid_argument("need at least one group");
  if (!(config_.wide_cell > 0.0) || !(config_.narrow_cell > 0.0)) {
    throw std::invalid_argument("cell widths must be positive");
  }
  if (!(config_.noise_variance >= 0.0) || !(config_.noise_floor >= 0.0 && config_.noise_floor <= 1.0)) {
    throw std::invalid_argument("bad noise settings");
  }
  Xoshiro256 rng(DeriveSeed(task_seed, "prototypes"));
  prototypes_.resize(static_cast<Eigen::Index>(config_.num_groups), static_cast<Eigen::Index>(kDiffusenessOffset));
  for (Eigen::Index g = 0; g < prototypes_.rows(); ++g) {
    for (Eigen::Index d = 0; d < prototypes_.cols(); ++d) prototypes_(g, d) = rng.Gaussian();
  }
  const double widths[FrameTaskConfig::kSubclasses] = {config_.wide_cell, config_.narrow_cell, config_.wide_cell,
                                      config_.narrow_cell};
  cell_edges_.push_back(0.0);
  while (cell_edges_.back() < 1.0) {
    const std::size_t k = cell_subclass_.size() % FrameTaskConfig::kSubclasses;
    cell_edges_.push_back(cell_edges_.back() + widths[k]);
    cell_subclass_.push_back(static_cast<int>(k));
  }
}

int FrameTask::SubclassOf(double latent) const {
  auto it = std::upper_bound(cell_edges_.begin(), cell_edges_.end(), latent);
  std::ptrdiff_t cell = (it - cell_edges_.begin()) - 1;
  cell = std::clamp<std::ptrdiff_t>(cell, 0, static_cast<std::ptrdiff_t>(cell_subclass_.size()) - 1);
  return cell_subclass_[static_cast<std::size_t>(cell)];
}

FrameTaskData FrameTask::Clean(std::size_t n, std::uint64_t seed) const { return Draw(n, seed, false); }
FrameTaskData FrameTask::Noisy(std::size_t n, std::uint64_t seed) const { return Draw(n, seed, true); }

FrameTaskData FrameTask::Draw(std::size_t n, std::uint64_t seed, bool noisy) const {
  Xoshiro256 rng(DeriveSeed(seed, noisy ? "noisy-frames" : "clean-frames"));
  FrameTaskData out;
  out.frames.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kFrameDim));
  out.variances = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kNumMelBands));
  out.labels.resize(n);
  const Eigen::Index diff0 = static_cast<Eigen::Index>(kDiffusenessOffset);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    const std::size_t group = static_cast<std::size_t>(rng.UniformInt(config_.num_groups));
    const double latent = rng.Uniform();
    const int sub = SubclassOf(latent);
    out.labels[i] = static_cast<int>(group * FrameTaskConfig::kSubclasses) + sub;
    for (Eigen::Index d = 0; d < diff0; ++d) {
      out.frames(row, d) = prototypes_(static_cast<Eigen::Index>(group), d) + config_.group_jitter * rng.Gaussian();
    }
    for (Eigen::Index d = 0; d < static_cast<Eigen::Index>(kNumMelBands); ++d) {
      out.frames(row, diff0 + d) = latent + config_.latent_jitter * rng.Gaussian();
    }
    if (noisy) {
      const double v = config_.noise_variance *
                       (config_.noise_floor + (1.0 - config_.noise_floor) * rng.Uniform());
      const double s = std::sqrt(v);
      for (Eigen::Index d = 0; d < static_cast<Eigen::Index>(kNumMelBands); ++d) {
        out.frames(row, diff0 + d) += s * rng.Gaussian();
        out.variances(row, d) = v;
      }
    }
  }
  return out;
}

}  // namespace cdrud
