// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_FRAME_TASK_H_
#define CDRUD_FRAME_TASK_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cdrud/decoding.h"

namespace cdrud {

// Synthetic frame classification in the 72-dim observation layout.
//
// The label is (group, subclass). The group is carried by the
// logmelspec/delta dims (dims 0..47): a per-group prototype plus Gaussian
// jitter. The subclass is carried by a latent u ~ U(0, 1) copied into all 24
// diffuseness dims. The unit interval is tiled by cells whose widths repeat
// {wide, narrow, wide, narrow}, and the subclass is the cell's position in
// that pattern. Noisy observations add N(0, v_n) to the diffuseness dims with
// a per-frame v_n, the same value reported as the frame's variance.
struct FrameTaskConfig {
  std::size_t num_groups = 3;
  double wide_cell = 0.1;
  double narrow_cell = 0.02;
  double group_jitter = 0.3;
  double latent_jitter = 0.002;
  double noise_variance = 0.05;        // v_n = noise_variance * U(noise_floor, 1)
  double noise_floor = 0.2;

  static constexpr std::size_t kSubclasses = 4;
  std::size_t NumClasses() const { return num_groups * kSubclasses; }
};

struct FrameTaskData {
  Eigen::MatrixXd frames;     // N x 72
  Eigen::MatrixXd variances;  // N x 24
  std::vector<int> labels;

  // Single-utterance view for EvaluateFrameAccuracy.
  LabeledUtterance AsUtterance() const { return {frames, variances, labels}; }
};

class FrameTask {
 public:
  FrameTask(const FrameTaskConfig& config, std::uint64_t task_seed);

  const FrameTaskConfig& config() const { return config_; }
  int SubclassOf(double latent) const;

  // Noise-free frames with zero variance.
  FrameTaskData Clean(std::size_t n, std::uint64_t seed) const;
  // Frames whose diffuseness dims are perturbed with the distortion model.
  FrameTaskData Noisy(std::size_t n, std::uint64_t seed) const;

 private:
  FrameTaskData Draw(std::size_t n, std::uint64_t seed, bool noisy) const;

  FrameTaskConfig config_;
  Eigen::MatrixXd prototypes_;  // groups x 48
  std::vector<double> cell_edges_;
  std::vector<int> cell_subclass_;
};

}  // namespace cdrud

#endif  // CDRUD_FRAME_TASK_H_
