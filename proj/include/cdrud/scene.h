// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_SCENE_H_
#define CDRUD_SCENE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cdrud/geometry.h"

namespace cdrud {

struct MultichannelSignal {
  std::vector<std::vector<double>> channels;  // C x N
  double sample_rate = 16000.0;
  ArrayGeometry geometry = ArrayGeometry::Default();

  std::size_t NumChannels() const { return channels.size(); }
  std::size_t NumSamples() const { return channels.empty() ? 0 : channels.front().size(); }
  // Equal channel lengths, finite samples, channel count matching geometry.
  void Validate() const;
};

struct SceneSpec {
  Direction direct_doa;
  double drr_db = 0.0;
  double duration_s = 1.0;
  double sample_rate = 16000.0;
  std::uint64_t seed = 0;

  void Validate() const;
  std::size_t NumSamples() const;
};

// White Gaussian source arriving as a plane wave from spec.direct_doa, with
// the per-mic delays applied exactly in the frequency domain. Unit mean
// power.
MultichannelSignal GeneratePlaneWave(const SceneSpec& spec, const ArrayGeometry& geometry);

// Superposition of independent white plane waves from `n_directions`
// directions on a Fibonacci sphere. Unit mean power per channel.
MultichannelSignal GenerateIsotropicField(const SceneSpec& spec, const ArrayGeometry& geometry,
                                          std::size_t n_directions = 512);

// direct + g * diffuse with g chosen so that the direct-to-diffuse power
// ratio is drr_db. +inf returns `direct`, -inf returns `diffuse`.
MultichannelSignal MixScene(const MultichannelSignal& direct, const MultichannelSignal& diffuse,
                            double drr_db);

// Full scene: plane wave and isotropic field mixed at spec.drr_db.
MultichannelSignal GenerateScene(const SceneSpec& spec, const ArrayGeometry& geometry,
                                 std::size_t n_directions = 512);

// Mean over channels of the per-channel mean square.
double MeanPower(const MultichannelSignal& signal);
double ChannelPower(const std::vector<double>& channel);

// Quasi-uniform unit vectors on the sphere (golden-angle spiral).
std::vector<Vec3> FibonacciSphere(std::size_t n);

}  // namespace cdrud

#endif  // CDRUD_SCENE_H_
