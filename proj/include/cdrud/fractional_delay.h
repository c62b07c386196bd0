// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_FRACTIONAL_DELAY_H_
#define CDRUD_FRACTIONAL_DELAY_H_

#include <span>
#include <vector>

namespace cdrud {

inline constexpr int kDefaultDelayTaps = 64;

// y[n] = x(n - delay) evaluated with a Blackman-windowed sinc of `taps`
// points. Delay is in samples and may be negative or fractional; input
// outside [0, N) reads as zero. Integer delays are exact shifts.
std::vector<double> FractionalDelay(std::span<const double> input, double delay,
                                    int taps = kDefaultDelayTaps);

}  // namespace cdrud

#endif  // CDRUD_FRACTIONAL_DELAY_H_
