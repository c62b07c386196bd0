// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_TRAINER_H_
#define CDRUD_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cdrud/mlp.h"

namespace cdrud {

struct Gradient {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> bias;
};

// Mean cross-entropy over the batch (inputs are rows); fills `gradient`
// with its derivative when non-null.
double CrossEntropy(const MlpModel& model, const Eigen::MatrixXd& inputs, std::span<const int> labels,
                    Gradient* gradient = nullptr);

struct TrainConfig {
  std::vector<std::size_t> hidden = {64, 64};
  std::size_t epochs = 20;
  std::size_t batch_size = 64;
  double learning_rate = 0.1;
  double momentum = 0.9;
  std::uint64_t seed = 1;
};

struct TrainReport {
  std::vector<double> epoch_loss;  // mean training loss per epoch
  std::vector<double> batch_loss;  // every mini-batch, in order
  double train_accuracy = 0.0;
};

// Mini-batch SGD with momentum on cross-entropy. The epoch order is a
// Fisher-Yates shuffle from the seeded generator, so identical inputs give
// an identical model. Throws std::invalid_argument if fewer than two
// classes are present.
MlpModel TrainMlp(const Eigen::MatrixXd& inputs, const std::vector<int>& labels, const TrainConfig& config,
                  TrainReport* report = nullptr);
// Continues from `initial`; the output size must cover every label.
MlpModel TrainMlp(MlpModel initial, const Eigen::MatrixXd& inputs, const std::vector<int>& labels,
                  const TrainConfig& config, TrainReport* report = nullptr);

double ClassificationAccuracy(const MlpModel& model, const Eigen::MatrixXd& inputs, std::span<const int> labels);

}  // namespace cdrud

#endif  // CDRUD_TRAINER_H_
