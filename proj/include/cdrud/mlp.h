// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_MLP_H_
#define CDRUD_MLP_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

namespace cdrud {

enum class Activation : std::uint32_t { kSigmoid = 1, kSoftmax = 2 };

struct Layer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out
  Activation activation = Activation::kSigmoid;

  Eigen::Index input_dim() const { return weights.cols(); }
  Eigen::Index output_dim() const { return weights.rows(); }
};

// Sigmoid hidden layers followed by a softmax output layer.
class MlpModel {
 public:
  MlpModel() = default;
  // Throws DimensionError when layer sizes do not chain and
  // std::invalid_argument for non-finite parameters or bad activations.
  explicit MlpModel(std::vector<Layer> layers);

  // dims = {input, hidden..., output}; all parameters zero.
  static MlpModel Zeros(const std::vector<std::size_t>& dims);
  // Glorot-uniform weights, zero biases, drawn from xoshiro256**(seed).
  static MlpModel RandomInit(const std::vector<std::size_t>& dims, std::uint64_t seed);

  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& mutable_layers() { return layers_; }
  std::size_t InputDim() const;
  std::size_t OutputDim() const;
  std::vector<std::size_t> Dims() const;
  void Validate() const;

  // Posterior vector for one input. Throws DimensionError on width mismatch.
  Eigen::VectorXd Forward(const Eigen::VectorXd& input) const;
  // Row-wise posteriors for a batch of inputs (rows).
  Eigen::MatrixXd ForwardBatch(const Eigen::MatrixXd& inputs) const;

 private:
  std::vector<Layer> layers_;
};

// Numerically stable softmax of each row.
Eigen::MatrixXd SoftmaxRows(const Eigen::MatrixXd& logits);

// "UDNN" file: u32 version, u32 n_layers, (n_layers + 1) u32 dims, n_layers
// u32 activation ids, then per layer row-major float32 weights followed by
// float32 biases, all little-endian.
inline constexpr std::uint32_t kModelFileVersion = 1;
void SaveModel(const std::filesystem::path& path, const MlpModel& model);
MlpModel LoadModel(const std::filesystem::path& path);
// Parameters rounded through float32, as they would be after Save/Load.
MlpModel RoundToFloat(const MlpModel& model);

}  // namespace cdrud

#endif  // CDRUD_MLP_H_
