// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/diffuseness.h"

#include <stdexcept>

namespace cdrud {

Eigen::VectorXd ProjectPair(std::span<const double> diffuseness, const MelFilterbank& filterbank) {
  return filterbank.Apply(diffuseness);
}

DiffusenessDistribution PoolPairs(const Eigen::MatrixXd& per_pair, double variance_scale) {
  const Eigen::Index m = per_pair.rows();
  if (m < 2) throw std::invalid_argument("cross-pair variance needs at least two pairs");
  if (!(variance_scale >= 0.0)) throw std::invalid_argument("variance scale must be non-negative");
  DiffusenessDistribution out;
  out.per_pair = per_pair;
  out.mean = per_pair.colwise().mean().transpose();
  out.variance = (per_pair.rowwise() - out.mean.transpose()).colwise().squaredNorm().transpose() /
                 static_cast<double>(m - 1);
  out.variance *= variance_scale;
  return out;
}

std::vector<double> EstimateCdr(const Spectrogram& a, const Spectrogram& b, std::span<const double> gamma_diff,
                                const DiffusenessOptions& options) {
  if (gamma_diff.size() != a.num_bands) throw DimensionError("diffuse coherence length does not match bands");
  const CoherenceTrack track = Coherence(a, b, options.coherence);
  std::vector<double> gd(gamma_diff.size());
  for (std::size_t k = 0; k < gd.size(); ++k) gd[k] = ConditionDiffuseCoherence(gamma_diff[k], options.cdr.lobes);
  std::vector<double> out(track.gamma.size());
  for (std::size_t t = 0; t < track.num_frames; ++t) {
    for (std::size_t k = 0; k < track.num_bands; ++k) {
      out[t * track.num_bands + k] = CdrFromCoherence(track.at(t, k), gd[k], options.cdr.cdr_max);
    }
  }
  return out;
}

std::vector<DiffusenessDistribution> ExtractDiffuseness(const std::vector<Spectrogram>& spectra,
                                                        const ArrayGeometry& geometry,
                                                        const MelFilterbank& filterbank,
                                                        const DiffusenessOptions& options) {
  if (spectra.size() != geometry.NumMics()) throw DimensionError("spectrogram count does not match geometry");
  const StftConfig& config = spectra.front().config;
  const std::size_t frames = spectra.front().num_frames;
  const std::size_t bands = spectra.front().num_bands;
  if (filterbank.num_bands() != bands) throw DimensionError("filterbank does not match STFT bands");
  const std::size_t pairs = geometry.NumPairs();
  const Eigen::Index filters = static_cast<Eigen::Index>(filterbank.num_filters());

  std::vector<Eigen::MatrixXd> per_pair(frames, Eigen::MatrixXd(static_cast<Eigen::Index>(pairs), filters));
  std::vector<double> d(bands);
  for (std::size_t m = 0; m < pairs; ++m) {
    const MicPair& p = geometry.pair(m);
    const std::vector<double> cdr =
        EstimateCdr(spectra[p.first], spectra[p.second], DiffuseCoherence(geometry, m, config), options);
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t k = 0; k < bands; ++k) d[k] = Diffuseness(cdr[t * bands + k]);
      per_pair[t].row(static_cast<Eigen::Index>(m)) = ProjectPair(d, filterbank).transpose();
    }
  }
  std::vector<DiffusenessDistribution> out;
  out.reserve(frames);
  for (auto& x : per_pair) out.push_back(PoolPairs(x, options.variance_scale));
  return out;
}

}  // namespace cdrud
