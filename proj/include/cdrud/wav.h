// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_WAV_H_
#define CDRUD_WAV_H_

#include <filesystem>
#include <vector>

#include "cdrud/scene.h"

namespace cdrud {

enum class WavEncoding { kPcm16, kFloat32 };

struct WavData {
  std::vector<std::vector<double>> channels;
  double sample_rate = 0.0;
  WavEncoding encoding = WavEncoding::kFloat32;
};

// Little-endian RIFF/WAVE. PCM16 uses x * 32768 rounded and clipped to the
// int16 range.
void WriteWav(const std::filesystem::path& path, const std::vector<std::vector<double>>& channels,
              double sample_rate, WavEncoding encoding = WavEncoding::kFloat32);
void WriteWav(const std::filesystem::path& path, const MultichannelSignal& signal,
              WavEncoding encoding = WavEncoding::kFloat32);

// Accepts PCM16 and IEEE float32 (plain or WAVE_FORMAT_EXTENSIBLE) and throws
// FormatError for anything else.
WavData ReadWav(const std::filesystem::path& path);
// Throws DimensionError when the channel count differs from the geometry.
MultichannelSignal ReadWav(const std::filesystem::path& path, const ArrayGeometry& geometry);

}  // namespace cdrud

#endif  // CDRUD_WAV_H_
