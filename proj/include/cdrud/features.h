// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_FEATURES_H_
#define CDRUD_FEATURES_H_

#include <vector>

#include <Eigen/Dense>

#include "cdrud/diffuseness.h"
#include "cdrud/mel.h"
#include "cdrud/stft.h"

namespace cdrud {

inline constexpr double kDefaultLogFloorRatio = 1e-10;
// Used when the whole utterance is silent.
inline constexpr double kAbsoluteLogFloor = 1e-30;

// Natural log of mel-weighted power |X|^2, frames x filters. Powers are
// floored at max(floor_ratio * mean mel power of the utterance,
// kAbsoluteLogFloor).
Eigen::MatrixXd LogMelSpectrum(const Spectrogram& spectrum, const MelFilterbank& filterbank,
                               double floor_ratio = kDefaultLogFloorRatio);

struct MvnStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // population std; 0 marks a constant dimension
};

// Per-utterance mean and variance normalization. Constant dimensions map to
// zero. Throws std::invalid_argument for fewer than 2 frames.
Eigen::MatrixXd Mvn(const Eigen::MatrixXd& frames, MvnStats* stats = nullptr);

// Regression deltas over +-window frames with edge replication.
Eigen::MatrixXd Deltas(const Eigen::MatrixXd& frames, int window = 2);

// [logmel | delta | diffuseness mean] per frame.
Eigen::MatrixXd Assemble(const Eigen::MatrixXd& logmel, const Eigen::MatrixXd& delta,
                         const Eigen::MatrixXd& diffuseness_mean);

// Row t becomes frames[t-context .. t+context] concatenated, clamping
// indices at the utterance boundaries.
Eigen::MatrixXd Splice(const Eigen::MatrixXd& frames, int context = kDefaultContext);

struct FeaturePipelineOptions {
  StftConfig stft;
  DiffusenessOptions diffuseness;
  Direction look;
  double log_floor_ratio = kDefaultLogFloorRatio;
  int delta_window = 2;
  bool deltas_after_mvn = true;
  int context = kDefaultContext;
};

struct UtteranceFeatures {
  Eigen::MatrixXd frames;     // T x 72
  Eigen::MatrixXd variances;  // T x 24, scaled diffuseness variances
  MvnStats mvn;
  std::vector<DiffusenessDistribution> diffuseness;

  Eigen::MatrixXd Spliced(int context = kDefaultContext) const { return Splice(frames, context); }
};

// STFT, per-pair coherence, CDR, diffuseness, pooling, delay-and-sum
// logmelspec with MVN, deltas and assembly.
UtteranceFeatures ExtractFeatures(const MultichannelSignal& signal, const FeaturePipelineOptions& options = {});

}  // namespace cdrud

#endif  // CDRUD_FEATURES_H_
