// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/coherence.h"

#include <cmath>
#include <stdexcept>

namespace cdrud {

namespace {

void CheckCompatible(const Spectrogram& a, const Spectrogram& b) {
  if (a.num_frames != b.num_frames || a.num_bands != b.num_bands ||
      a.config.dft_length != b.config.dft_length || a.config.hop != b.config.hop ||
      a.config.sample_rate != b.config.sample_rate || a.config.window != b.config.window) {
    throw DimensionError("spectrograms have different shapes or configs");
  }
  if (a.num_frames == 0) throw std::invalid_argument("spectrogram has no frames");
}

double MeanPower(const Spectrogram& s) {
  double acc = 0.0;
  for (const auto& v : s.bins) acc += std::norm(v);
  return s.bins.empty() ? 0.0 : acc / static_cast<double>(s.bins.size());
}

std::complex<double> Normalize(std::complex<double> cross, double paa, double pbb, double floor) {
  const double denom = std::sqrt(paa * pbb);
  if (!(denom > floor)) return 0.0;
  std::complex<double> g = cross / denom;
  const double mag = std::abs(g);
  if (mag > 1.0) g /= mag;
  return g;
}

}  // namespace

CoherenceTrack Coherence(const Spectrogram& a, const Spectrogram& b, const CoherenceOptions& options) {
  CheckCompatible(a, b);
  if (!(options.lambda > 0.0 && options.lambda < 1.0)) {
    throw std::invalid_argument("forgetting factor must lie in (0, 1)");
  }
  const double floor = options.power_epsilon * std::sqrt(MeanPower(a) * MeanPower(b));
  const double lambda = options.lambda;
  const std::size_t bands = a.num_bands;

  CoherenceTrack out;
  out.num_frames = a.num_frames;
  out.num_bands = bands;
  out.gamma.resize(a.num_frames * bands);
  std::vector<double> paa(bands), pbb(bands);
  std::vector<std::complex<double>> pab(bands);
  for (std::size_t t = 0; t < a.num_frames; ++t) {
    for (std::size_t k = 0; k < bands; ++k) {
      const std::complex<double> xa = a.at(t, k);
      const std::complex<double> xb = b.at(t, k);
      if (t == 0) {
        paa[k] = std::norm(xa);
        pbb[k] = std::norm(xb);
        pab[k] = xa * std::conj(xb);
      } else {
        paa[k] = lambda * paa[k] + (1.0 - lambda) * std::norm(xa);
        pbb[k] = lambda * pbb[k] + (1.0 - lambda) * std::norm(xb);
        pab[k] = lambda * pab[k] + (1.0 - lambda) * (xa * std::conj(xb));
      }
      out.gamma[t * bands + k] = Normalize(pab[k], paa[k], pbb[k], floor);
    }
  }
  return out;
}

std::vector<std::complex<double>> LongTermCoherence(const Spectrogram& a, const Spectrogram& b) {
  CheckCompatible(a, b);
  const std::size_t bands = a.num_bands;
  std::vector<double> paa(bands, 0.0), pbb(bands, 0.0);
  std::vector<std::complex<double>> pab(bands, 0.0);
  for (std::size_t t = 0; t < a.num_frames; ++t) {
    for (std::size_t k = 0; k < bands; ++k) {
      paa[k] += std::norm(a.at(t, k));
      pbb[k] += std::norm(b.at(t, k));
      pab[k] += a.at(t, k) * std::conj(b.at(t, k));
    }
  }
  const double floor = 1e-12 * std::sqrt(MeanPower(a) * MeanPower(b)) * static_cast<double>(a.num_frames);
  std::vector<std::complex<double>> out(bands);
  for (std::size_t k = 0; k < bands; ++k) out[k] = Normalize(pab[k], paa[k], pbb[k], floor);
  return out;
}

double DiffuseCoherence(double distance, double frequency, double speed_of_sound) {
  const double x = 2.0 * kPi * frequency * distance / speed_of_sound;
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

std::vector<double> DiffuseCoherence(const ArrayGeometry& geometry, std::size_t pair, const StftConfig& config) {
  if (pair >= geometry.NumPairs()) throw std::invalid_argument("pair index out of range");
  const double d = geometry.PairDistance(pair);
  std::vector<double> out(config.NumBands());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = DiffuseCoherence(d, config.BandFrequency(k), geometry.speed_of_sound());
  }
  return out;
}

}  // namespace cdrud
