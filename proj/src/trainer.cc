// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "cdrud/common.h"
#include "cdrud/decoding.h"
#include "cdrud/random.h"

namespace cdrud {

namespace {

void CheckDataset(const Eigen::MatrixXd& inputs, std::span<const int> labels) {
  if (inputs.rows() == 0) throw std::invalid_argument("empty dataset");
  if (static_cast<std::size_t>(inputs.rows()) != labels.size()) {
    throw DimensionError("number of labels does not match number of inputs");
  }
}

}  // namespace

double CrossEntropy(const MlpModel& model, const Eigen::MatrixXd& inputs, std::span<const int> labels,
                    Gradient* gradient) {
  CheckDataset(inputs, labels);
  const auto& layers = model.layers();
  if (inputs.cols() != layers.front().input_dim()) throw DimensionError("input width does not match model");
  const Eigen::Index n = inputs.rows();
  const Eigen::Index classes = layers.back().output_dim();

  std::vector<Eigen::MatrixXd> acts;
  acts.reserve(layers.size() + 1);
  acts.push_back(inputs);
  for (const Layer& l : layers) {
    Eigen::MatrixXd z = acts.back() * l.weights.transpose();
    z.rowwise() += l.bias.transpose();
    if (l.activation == Activation::kSoftmax) acts.push_back(SoftmaxRows(z));
    else acts.push_back(z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); }));
  }
  const Eigen::MatrixXd& p = acts.back();
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    if (y < 0 || y >= classes) throw DimensionError("label " + std::to_string(y) + " outside model outputs");
    loss -= std::log(std::max(p(i, y), 1e-300));
  }
  loss /= static_cast<double>(n);
  if (!gradient) return loss;

  Eigen::MatrixXd delta = p;
  for (Eigen::Index i = 0; i < n; ++i) delta(i, labels[static_cast<std::size_t>(i)]) -= 1.0;
  delta /= static_cast<double>(n);
  gradient->weights.assign(layers.size(), {});
  gradient->bias.assign(layers.size(), {});
  for (std::size_t li = layers.size(); li-- > 0;) {
    gradient->weights[li] = delta.transpose() * acts[li];
    gradient->bias[li] = delta.colwise().sum().transpose();
    if (li > 0) {
      const Eigen::MatrixXd& a = acts[li];
      delta = ((delta * layers[li].weights).array() * a.array() * (1.0 - a.array())).matrix();
    }
  }
  return loss;
}

MlpModel TrainMlp(const Eigen::MatrixXd& inputs, const std::vector<int>& labels, const TrainConfig& config,
                  TrainReport* report) {
  CheckDataset(inputs, labels);
  const int max_label = *std::max_element(labels.begin(), labels.end());
  std::vector<std::size_t> dims;
  dims.push_back(static_cast<std::size_t>(inputs.cols()));
  dims.insert(dims.end(), config.hidden.begin(), config.hidden.end());
  dims.push_back(static_cast<std::size_t>(max_label) + 1);
  return TrainMlp(MlpModel::RandomInit(dims, DeriveSeed(config.seed, "init")), inputs, labels, config, report);
}

MlpModel TrainMlp(MlpModel model, const Eigen::MatrixXd& inputs, const std::vector<int>& labels,
                  const TrainConfig& config, TrainReport* report) {
  CheckDataset(inputs, labels);
  if (std::set<int>(labels.begin(), labels.end()).size() < 2) {
    throw std::invalid_argument("training needs at least two distinct classes");
  }
  if (config.batch_size == 0) throw std::invalid_argument("batch size must be positive");
  if (!(config.learning_rate >= 0.0) || !(config.momentum >= 0.0 && config.momentum < 1.0)) {
    throw std::invalid_argument("learning rate must be >= 0 and momentum in [0, 1)");
  }
  model.Validate();

  auto& layers = model.mutable_layers();
  std::vector<Eigen::MatrixXd> vel_w;
  std::vector<Eigen::VectorXd> vel_b;
  for (const Layer& l : layers) {
    vel_w.push_back(Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()));
    vel_b.push_back(Eigen::VectorXd::Zero(l.bias.size()));
  }

  const std::size_t n = static_cast<std::size_t>(inputs.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  TrainReport local;
  Gradient grad;
  Eigen::MatrixXd batch;
  std::vector<int> batch_labels;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    Xoshiro256 rng(DeriveSeed(config.seed, "shuffle", epoch));
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.UniformInt(i)]);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t count = std::min(config.batch_size, n - start);
      batch.resize(static_cast<Eigen::Index>(count), inputs.cols());
      batch_labels.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        batch.row(static_cast<Eigen::Index>(i)) = inputs.row(static_cast<Eigen::Index>(order[start + i]));
        batch_labels[i] = labels[order[start + i]];
      }
      const double loss = CrossEntropy(model, batch, batch_labels, &grad);
      local.batch_loss.push_back(loss);
      epoch_loss += loss * static_cast<double>(count);
      for (std::size_t li = 0; li < layers.size(); ++li) {
        vel_w[li] = config.momentum * vel_w[li] - config.learning_rate * grad.weights[li];
        vel_b[li] = config.momentum * vel_b[li] - config.learning_rate * grad.bias[li];
        layers[li].weights += vel_w[li];
        layers[li].bias += vel_b[li];
      }
    }
    local.epoch_loss.push_back(epoch_loss / static_cast<double>(n));
  }
  model.Validate();
  local.train_accuracy = ClassificationAccuracy(model, inputs, labels);
  if (report) *report = std::move(local);
  return model;
}

double ClassificationAccuracy(const MlpModel& model, const Eigen::MatrixXd& inputs, std::span<const int> labels) {
  CheckDataset(inputs, labels);
  const Eigen::MatrixXd p = model.ForwardBatch(inputs);
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if (ArgMax(p.row(i).transpose()) == labels[static_cast<std::size_t>(i)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(p.rows());
}

}  // namespace cdrud
