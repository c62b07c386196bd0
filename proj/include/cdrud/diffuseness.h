// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_DIFFUSENESS_H_
#define CDRUD_DIFFUSENESS_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cdrud/cdr.h"
#include "cdrud/coherence.h"
#include "cdrud/mel.h"
#include "cdrud/stft.h"

namespace cdrud {

// Cross-pair statistics of the mel-domain diffuseness at one frame.
struct DiffusenessDistribution {
  Eigen::VectorXd mean;      // x_n
  Eigen::VectorXd variance;  // scaled unbiased cross-pair variance
  Eigen::MatrixXd per_pair;  // M x bands, x^(m)_n
};

// Mel projection of one pair's per-band diffuseness.
Eigen::VectorXd ProjectPair(std::span<const double> diffuseness, const MelFilterbank& filterbank);

// Mean over pairs and 1/(M-1) sample variance, variance multiplied by
// `variance_scale`. Throws std::invalid_argument when M < 2.
DiffusenessDistribution PoolPairs(const Eigen::MatrixXd& per_pair, double variance_scale = kDefaultVarianceScale);

struct DiffusenessOptions {
  CoherenceOptions coherence;
  CdrOptions cdr;
  double variance_scale = kDefaultVarianceScale;
};

// frames x bands CDR estimates for one pair.
std::vector<double> EstimateCdr(const Spectrogram& a, const Spectrogram& b, std::span<const double> gamma_diff,
                                const DiffusenessOptions& options = {});

// Per-frame diffuseness distributions from per-channel spectrograms.
std::vector<DiffusenessDistribution> ExtractDiffuseness(const std::vector<Spectrogram>& spectra,
                                                        const ArrayGeometry& geometry,
                                                        const MelFilterbank& filterbank,
                                                        const DiffusenessOptions& options = {});

}  // namespace cdrud

#endif  // CDRUD_DIFFUSENESS_H_
