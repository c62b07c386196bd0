// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_COMMON_H_
#define CDRUD_COMMON_H_

#include <cstddef>
#include <stdexcept>

namespace cdrud {

// Error categories. The CLI maps each to its own exit code; bad arguments
// are reported with std::invalid_argument.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultSpeedOfSound = 343.0;
inline constexpr double kDefaultCdrMax = 1e4;
inline constexpr double kDefaultVarianceScale = 0.1;

// Layout of the assembled observation: logmelspec | delta | diffuseness.
inline constexpr std::size_t kNumMelBands = 24;
inline constexpr std::size_t kDeltaOffset = kNumMelBands;
inline constexpr std::size_t kDiffusenessOffset = 2 * kNumMelBands;
inline constexpr std::size_t kFrameDim = 3 * kNumMelBands;
inline constexpr int kDefaultContext = 5;

}  // namespace cdrud

#endif  // CDRUD_COMMON_H_
