// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_DECODING_H_
#define CDRUD_DECODING_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cdrud/mlp.h"
#include "cdrud/sampler.h"

namespace cdrud {

// Total margin below which all samples count as ambiguous.
inline constexpr double kWeightEpsilon = 1e-15;

// Lowest index wins ties.
Eigen::Index ArgMax(const Eigen::VectorXd& p);

struct SampleWeights {
  Eigen::VectorXd margins;  // e^(l): top posterior minus best competitor
  Eigen::VectorXd weights;  // e^(l) / sum e, or 1/L when that sum < kWeightEpsilon
  bool degenerate = false;
};

// `posteriors` is L x J. Throws std::invalid_argument for J < 2 or L < 1.
SampleWeights MceWeights(const Eigen::MatrixXd& posteriors);

// Running means in sample order, l = 0..L-1; the weighted form divides by
// the accumulated weight, which is 1 for MCE weights.
Eigen::VectorXd AverageArithmetic(const Eigen::MatrixXd& posteriors);
Eigen::VectorXd AverageWeighted(const Eigen::MatrixXd& posteriors, const Eigen::VectorXd& weights);

Eigen::VectorXd DecodeFrameBaseline(const MlpModel& model, const Eigen::VectorXd& mean_input);
Eigen::VectorXd DecodeFrameArithmetic(const MlpModel& model, const SampleSet& samples);
Eigen::VectorXd DecodeFrameWeighted(const MlpModel& model, const SampleSet& samples);

enum class DecodeMode { kBaseline, kArithmetic, kWeighted };
DecodeMode ParseDecodeMode(const std::string& name);
std::string DecodeModeName(DecodeMode mode);

struct DecodeOptions {
  DecodeMode mode = DecodeMode::kWeighted;
  std::size_t num_samples = 30;
  std::uint64_t seed = 0;
  ClipMode clip = ClipMode::kNone;
  std::size_t jobs = 1;
};

// Per-frame decoding statistics collected alongside the posteriors.
struct FrameDecode {
  Eigen::MatrixXd posteriors;     // T x J
  Eigen::VectorXd sample_margin;  // mean MCE margin over the frame's samples (0 for baseline)
};

// frames: T x 72, variances: T x 24. The splice context is inferred from
// the model input size (72 * (2c + 1)). Frames are independent, so `jobs`
// threads give the same result as one.
FrameDecode DecodeUtterance(const MlpModel& model, const Eigen::MatrixXd& frames, const Eigen::MatrixXd& variances,
                            const DecodeOptions& options);

// Splice context implied by a model input width; throws DimensionError.
int ContextForInputDim(std::size_t input_dim);

struct LabeledUtterance {
  Eigen::MatrixXd frames;
  Eigen::MatrixXd variances;
  std::vector<int> labels;
};

struct ModeAccuracy {
  DecodeMode mode = DecodeMode::kBaseline;
  std::size_t frames = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  double mean_margin = 0.0;         // top-two gap of the decoded posterior
  double mean_sample_margin = 0.0;  // mean per-sample MCE margin
};

struct AccuracyReport {
  std::vector<ModeAccuracy> modes;
  std::size_t num_samples = 0;
  std::uint64_t seed = 0;

  const ModeAccuracy& Get(DecodeMode mode) const;
  std::string ToJson() const;
  std::string ToCsv() const;
};

// Throws std::invalid_argument on empty input and DimensionError when
// labels and frames disagree.
AccuracyReport EvaluateFrameAccuracy(const MlpModel& model, const std::vector<LabeledUtterance>& utterances,
                                     const std::vector<DecodeMode>& modes, std::size_t num_samples,
                                     std::uint64_t seed, ClipMode clip = ClipMode::kNone, std::size_t jobs = 1);

}  // namespace cdrud

#endif  // CDRUD_DECODING_H_
