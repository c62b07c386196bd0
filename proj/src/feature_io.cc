// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/feature_io.h"

#include <fstream>
#include <sstream>

#include "cdrud/common.h"
#include "cdrud/io_util.h"

namespace cdrud {

void WriteFeatureFile(const std::filesystem::path& path, const Eigen::MatrixXd& data, std::uint32_t flags) {
  ByteWriter w;
  w.PutBytes("UDFT");
  w.PutU32(kFeatureFileVersion);
  w.PutU32(static_cast<std::uint32_t>(data.rows()));
  w.PutU32(static_cast<std::uint32_t>(data.cols()));
  w.PutU32(flags);
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.cols(); ++c) w.PutF32(static_cast<float>(data(r, c)));
  }
  WriteFileAtomic(path, w.bytes());
}

FeatureFile ReadFeatureFile(const std::filesystem::path& path) {
  const std::string bytes = ReadFileBytes(path);
  ByteReader r(bytes);
  if (r.remaining() < 20 || r.GetBytes(4) != "UDFT") throw FormatError("not a UDFT feature file: " + path.string());
  const std::uint32_t version = r.GetU32();
  if (version != kFeatureFileVersion) throw FormatError("unsupported UDFT version " + std::to_string(version));
  const std::uint32_t rows = r.GetU32();
  const std::uint32_t dim = r.GetU32();
  FeatureFile out;
  out.flags = r.GetU32();
  if (r.remaining() != static_cast<std::size_t>(rows) * dim * 4) {
    throw FormatError("UDFT payload size does not match header: " + path.string());
  }
  out.data.resize(rows, dim);
  for (std::uint32_t i = 0; i < rows; ++i) {
    for (std::uint32_t j = 0; j < dim; ++j) out.data(i, j) = r.GetF32();
  }
  return out;
}

std::vector<int> ReadLabels(const std::filesystem::path& path) {
  std::istringstream in(ReadFileBytes(path));
  std::vector<int> labels;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size() || v < 0) throw std::invalid_argument(token);
      labels.push_back(v);
    } catch (const std::exception&) {
      throw FormatError("bad label '" + token + "' in " + path.string());
    }
  }
  return labels;
}

void WriteLabels(const std::filesystem::path& path, const std::vector<int>& labels) {
  std::string out;
  for (int v : labels) out += std::to_string(v) + "\n";
  WriteFileAtomic(path, out);
}

}  // namespace cdrud
