// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/beamformer.h"

#include <stdexcept>

#include "cdrud/fractional_delay.h"

namespace cdrud {

std::vector<double> DelayAndSum(const std::vector<std::vector<double>>& channels,
                                std::span<const double> advances) {
  if (channels.empty()) throw std::invalid_argument("no channels to beamform");
  if (advances.size() != channels.size()) throw DimensionError("one advance per channel required");
  const std::size_t n = channels.front().size();
  std::vector<double> out(n, 0.0);
  const double scale = 1.0 / static_cast<double>(channels.size());
  for (std::size_t c = 0; c < channels.size(); ++c) {
    if (channels[c].size() != n) throw DimensionError("channels differ in length");
    const std::vector<double> aligned = FractionalDelay(channels[c], -advances[c]);
    for (std::size_t i = 0; i < n; ++i) out[i] += scale * aligned[i];
  }
  return out;
}

std::vector<double> BeamformDelayAndSum(const MultichannelSignal& signal, const Direction& look) {
  signal.Validate();
  if (!look.IsFinite()) throw std::invalid_argument("look direction must be finite");
  std::vector<double> advances(signal.NumChannels());
  for (std::size_t c = 0; c < advances.size(); ++c) {
    advances[c] = signal.geometry.ArrivalDelay(c, look) * signal.sample_rate;
  }
  return DelayAndSum(signal.channels, advances);
}

}  // namespace cdrud
