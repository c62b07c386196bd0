// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_BEAMFORMER_H_
#define CDRUD_BEAMFORMER_H_

#include <span>
#include <vector>

#include "cdrud/scene.h"

namespace cdrud {

// y[n] = (1/C) sum_c x_c(n + advance_c), fractional advances in samples.
std::vector<double> DelayAndSum(const std::vector<std::vector<double>>& channels,
                                std::span<const double> advances);

// Steers toward `look`: each channel is advanced by its plane-wave arrival
// delay, giving unit gain for a wave from that direction.
std::vector<double> BeamformDelayAndSum(const MultichannelSignal& signal, const Direction& look);

}  // namespace cdrud

#endif  // CDRUD_BEAMFORMER_H_
