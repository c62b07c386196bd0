// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/mlp.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cdrud/common.h"
#include "cdrud/io_util.h"
#include "cdrud/random.h"

namespace cdrud {

namespace {

Eigen::MatrixXd Sigmoid(const Eigen::MatrixXd& x) {
  return x.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

}  // namespace

Eigen::MatrixXd SoftmaxRows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double m = logits.row(r).maxCoeff();
    out.row(r) = (logits.row(r).array() - m).exp().matrix();
    out.row(r) /= out.row(r).sum();
  }
  return out;
}

MlpModel::MlpModel(std::vector<Layer> layers) : layers_(std::move(layers)) { Validate(); }

void MlpModel::Validate() const {
  if (layers_.empty()) throw std::invalid_argument("model has no layers");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& l = layers_[i];
    if (l.bias.size() != l.weights.rows()) throw DimensionError("bias size mismatch in layer " + std::to_string(i));
    if (i > 0 && l.input_dim() != layers_[i - 1].output_dim()) {
      throw DimensionError("layer " + std::to_string(i) + " input does not match previous output");
    }
    if (!l.weights.allFinite() || !l.bias.allFinite()) {
      throw std::invalid_argument("non-finite parameters in layer " + std::to_string(i));
    }
    const bool last = i + 1 == layers_.size();
    const Activation want = last ? Activation::kSoftmax : Activation::kSigmoid;
    if (l.activation != want) {
      throw std::invalid_argument("layer " + std::to_string(i) + " must use " + (last ? "softmax" : "sigmoid"));
    }
  }
  if (layers_.back().output_dim() < 1) throw DimensionError("model has no outputs");
}

MlpModel MlpModel::Zeros(const std::vector<std::size_t>& dims) {
  if (dims.size() < 2) throw std::invalid_argument("need at least input and output sizes");
  std::vector<Layer> layers;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    Layer l;
    l.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dims[i + 1]), static_cast<Eigen::Index>(dims[i]));
    l.bias = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dims[i + 1]));
    l.activation = i + 2 == dims.size() ? Activation::kSoftmax : Activation::kSigmoid;
    layers.push_back(std::move(l));
  }
  return MlpModel(std::move(layers));
}

MlpModel MlpModel::RandomInit(const std::vector<std::size_t>& dims, std::uint64_t seed) {
  MlpModel m = Zeros(dims);
  Xoshiro256 rng(seed);
  for (Layer& l : m.layers_) {
    const double limit = std::sqrt(6.0 / static_cast<double>(l.input_dim() + l.output_dim()));
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) l.weights(r, c) = limit * (2.0 * rng.Uniform() - 1.0);
    }
  }
  return m;
}

std::size_t MlpModel::InputDim() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.front().input_dim());
}

std::size_t MlpModel::OutputDim() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.back().output_dim());
}

std::vector<std::size_t> MlpModel::Dims() const {
  std::vector<std::size_t> dims;
  if (layers_.empty()) return dims;
  dims.push_back(InputDim());
  for (const Layer& l : layers_) dims.push_back(static_cast<std::size_t>(l.output_dim()));
  return dims;
}

Eigen::MatrixXd MlpModel::ForwardBatch(const Eigen::MatrixXd& inputs) const {
  if (layers_.empty()) throw std::invalid_argument("model has no layers");
  if (inputs.cols() != layers_.front().input_dim()) {
    throw DimensionError("input width " + std::to_string(inputs.cols()) + " does not match model input " +
                         std::to_string(layers_.front().input_dim()));
  }
  // Row by row, so a row's output does not depend on the batch it came in.
  Eigen::MatrixXd h = inputs;
  for (const Layer& l : layers_) {
    Eigen::MatrixXd z(h.rows(), l.output_dim());
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      z.row(r).noalias() = (l.weights * h.row(r).transpose() + l.bias).transpose();
    }
    h = l.activation == Activation::kSoftmax ? SoftmaxRows(z) : Sigmoid(z);
  }
  return h;
}

Eigen::VectorXd MlpModel::Forward(const Eigen::VectorXd& input) const {
  return ForwardBatch(input.transpose()).row(0).transpose();
}

void SaveModel(const std::filesystem::path& path, const MlpModel& model) {
  model.Validate();
  ByteWriter w;
  w.PutBytes("UDNN");
  w.PutU32(kModelFileVersion);
  w.PutU32(static_cast<std::uint32_t>(model.layers().size()));
  for (std::size_t d : model.Dims()) w.PutU32(static_cast<std::uint32_t>(d));
  for (const Layer& l : model.layers()) w.PutU32(static_cast<std::uint32_t>(l.activation));
  for (const Layer& l : model.layers()) {
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) w.PutF32(static_cast<float>(l.weights(r, c)));
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) w.PutF32(static_cast<float>(l.bias(r)));
  }
  WriteFileAtomic(path, w.bytes());
}

MlpModel LoadModel(const std::filesystem::path& path) {
  const std::string bytes = ReadFileBytes(path);
  ByteReader r(bytes);
  if (r.remaining() < 12 || r.GetBytes(4) != "UDNN") throw FormatError("not a UDNN model file: " + path.string());
  const std::uint32_t version = r.GetU32();
  if (version != kModelFileVersion) throw FormatError("unsupported UDNN version " + std::to_string(version));
  const std::uint32_t n = r.GetU32();
  if (n == 0 || n > 1024) throw FormatError("implausible layer count in " + path.string());
  std::vector<std::uint32_t> dims(n + 1);
  for (auto& d : dims) {
    d = r.GetU32();
    if (d == 0) throw FormatError("zero layer width in " + path.string());
  }
  std::vector<Activation> acts(n);
  for (auto& a : acts) {
    const std::uint32_t id = r.GetU32();
    if (id != static_cast<std::uint32_t>(Activation::kSigmoid) &&
        id != static_cast<std::uint32_t>(Activation::kSoftmax)) {
      throw FormatError("unknown activation id " + std::to_string(id));
    }
    a = static_cast<Activation>(id);
  }
  std::size_t expected = 0;
  for (std::uint32_t i = 0; i < n; ++i) expected += (static_cast<std::size_t>(dims[i]) + 1) * dims[i + 1] * 4;
  if (r.remaining() != expected) throw FormatError("UDNN payload size does not match header: " + path.string());
  std::vector<Layer> layers(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    Layer& l = layers[i];
    l.activation = acts[i];
    l.weights.resize(dims[i + 1], dims[i]);
    l.bias.resize(dims[i + 1]);
    for (Eigen::Index row = 0; row < l.weights.rows(); ++row) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) l.weights(row, c) = r.GetF32();
    }
    for (Eigen::Index row = 0; row < l.bias.size(); ++row) l.bias(row) = r.GetF32();
  }
  try {
    return MlpModel(std::move(layers));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid model: ") + e.what());
  }
}

MlpModel RoundToFloat(const MlpModel& model) {
  MlpModel out = model;
  for (Layer& l : out.mutable_layers()) {
    l.weights = l.weights.cast<float>().cast<double>();
    l.bias = l.bias.cast<float>().cast<double>();
  }
  return out;
}

}  // namespace cdrud
