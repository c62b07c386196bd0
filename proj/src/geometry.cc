// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/geometry.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cdrud/io_util.h"

namespace cdrud {

double Dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

double Distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Vec3 Direction::UnitVector() const {
  return {std::cos(elevation) * std::cos(azimuth), std::cos(elevation) * std::sin(azimuth),
          std::sin(elevation)};
}

bool Direction::IsFinite() const { return std::isfinite(azimuth) && std::isfinite(elevation); }

ArrayGeometry::ArrayGeometry(std::vector<Vec3> mics, double speed_of_sound)
    : mics_(std::move(mics)), speed_of_sound_(speed_of_sound) {
  if (mics_.size() < 2) throw std::invalid_argument("array needs at least two microphones");
  if (!(speed_of_sound_ > 0.0) || !std::isfinite(speed_of_sound_)) {
    throw std::invalid_argument("speed of sound must be positive");
  }
  for (const Vec3& p : mics_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw std::invalid_argument("microphone coordinates must be finite");
    }
  }
  for (std::size_t a = 0; a < mics_.size(); ++a) {
    for (std::size_t b = a + 1; b < mics_.size(); ++b) {
      if (!(Distance(mics_[a], mics_[b]) > 0.0)) {
        throw std::invalid_argument("coincident microphones " + std::to_string(a) + " and " +
                                    std::to_string(b));
      }
      pairs_.push_back({a, b});
    }
  }
}

ArrayGeometry ArrayGeometry::UniformCircle(std::size_t n, double adjacent_spacing,
                                           double speed_of_sound) {
  if (n < 2) throw std::invalid_argument("circle needs at least two microphones");
  const double radius = adjacent_spacing / (2.0 * std::sin(kPi / static_cast<double>(n)));
  std::vector<Vec3> mics;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    mics.push_back({radius * std::cos(phi), radius * std::sin(phi), 0.0});
  }
  return ArrayGeometry(std::move(mics), speed_of_sound);
}

ArrayGeometry ArrayGeometry::Default() { return UniformCircle(8, 0.08); }

double ArrayGeometry::PairDistance(std::size_t m) const {
  const MicPair& p = pairs_.at(m);
  return Distance(mics_[p.first], mics_[p.second]);
}

double ArrayGeometry::ArrivalDelay(std::size_t i, const Direction& doa) const {
  return -Dot(mics_.at(i), doa.UnitVector()) / speed_of_sound_;
}

bool ArrayGeometry::operator==(const ArrayGeometry& other) const {
  if (speed_of_sound_ != other.speed_of_sound_ || mics_.size() != other.mics_.size()) return false;
  for (std::size_t i = 0; i < mics_.size(); ++i) {
    if (mics_[i].x != other.mics_[i].x || mics_[i].y != other.mics_[i].y ||
        mics_[i].z != other.mics_[i].z) {
      return false;
    }
  }
  return true;
}

ArrayGeometry ParseGeometry(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Vec3> mics;
  double c = kDefaultSpeedOfSound;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "speed_of_sound") {
      if (!(ls >> c)) throw FormatError("geometry line " + std::to_string(line_no) + ": bad speed_of_sound");
      continue;
    }
    Vec3 p;
    try {
      p.x = std::stod(first);
    } catch (const std::exception&) {
      throw FormatError("geometry line " + std::to_string(line_no) + ": expected coordinates");
    }
    if (!(ls >> p.y >> p.z)) {
      throw FormatError("geometry line " + std::to_string(line_no) + ": expected 3 coordinates");
    }
    std::string extra;
    if (ls >> extra) throw FormatError("geometry line " + std::to_string(line_no) + ": trailing data");
    mics.push_back(p);
  }
  try {
    return ArrayGeometry(std::move(mics), c);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid geometry: ") + e.what());
  }
}

ArrayGeometry ReadGeometry(const std::filesystem::path& path) {
  return ParseGeometry(ReadFileBytes(path));
}

std::string FormatGeometry(const ArrayGeometry& geometry) {
  std::ostringstream out;
  out.precision(17);
  out << "speed_of_sound " << geometry.speed_of_sound() << "\n";
  for (const Vec3& p : geometry.mics()) out << p.x << " " << p.y << " " << p.z << "\n";
  return out.str();
}

}  // namespace cdrud
