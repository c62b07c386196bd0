// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_FEATURE_IO_H_
#define CDRUD_FEATURE_IO_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

namespace cdrud {

// File layout: "UDFT", u32 version, u32 rows, u32 dim, u32 flags, then
// rows x dim little-endian float32 in row-major order.
inline constexpr std::uint32_t kFeatureFileVersion = 1;

enum FeatureFlags : std::uint32_t {
  kFeatureFlagSpliced = 1u << 0,
  kFeatureFlagVariance = 1u << 1,
  kFeatureFlagPosterior = 1u << 2,
};

struct FeatureFile {
  Eigen::MatrixXd data;
  std::uint32_t flags = 0;
};

void WriteFeatureFile(const std::filesystem::path& path, const Eigen::MatrixXd& data, std::uint32_t flags = 0);
FeatureFile ReadFeatureFile(const std::filesystem::path& path);

// One integer class label per line.
std::vector<int> ReadLabels(const std::filesystem::path& path);
void WriteLabels(const std::filesystem::path& path, const std::vector<int>& labels);

}  // namespace cdrud

#endif  // CDRUD_FEATURE_IO_H_
