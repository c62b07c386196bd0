// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_COHERENCE_H_
#define CDRUD_COHERENCE_H_

#include <complex>
#include <cstddef>
#include <vector>

#include "cdrud/geometry.h"
#include "cdrud/stft.h"

namespace cdrud {

struct CoherenceOptions {
  double lambda = 0.8;           // forgetting factor, 0 < lambda < 1
  double power_epsilon = 1e-12;  // relative to the geometric mean band power
};

// Complex coherence per frame and band for one microphone pair. Rows are
// the CoherenceFrame slices of the pair.
struct CoherenceTrack {
  std::vector<std::complex<double>> gamma;  // frames x bands
  std::size_t num_frames = 0;
  std::size_t num_bands = 0;

  const std::complex<double>& at(std::size_t t, std::size_t k) const { return gamma[t * num_bands + k]; }
};

// Recursively smoothed auto/cross spectra
//   phi_ab[n] = lambda * phi_ab[n-1] + (1 - lambda) * A[n] conj(B[n]),
// initialised with the first frame's products, and
//   gamma = phi_ab / sqrt(phi_aa * phi_bb)
// clamped to |gamma| <= 1. Cells with sqrt(phi_aa * phi_bb) at or below
// power_epsilon times the mean band power are set to zero.
CoherenceTrack Coherence(const Spectrogram& a, const Spectrogram& b, const CoherenceOptions& options = {});

// Coherence from spectra accumulated over the whole signal.
std::vector<std::complex<double>> LongTermCoherence(const Spectrogram& a, const Spectrogram& b);

// Coherence of a spherically isotropic field between omnidirectional mics
// spaced `distance` apart: sin(x)/x with x = 2 pi f d / c.
double DiffuseCoherence(double distance, double frequency, double speed_of_sound);
std::vector<double> DiffuseCoherence(const ArrayGeometry& geometry, std::size_t pair, const StftConfig& config);

}  // namespace cdrud

#endif  // CDRUD_COHERENCE_H_
