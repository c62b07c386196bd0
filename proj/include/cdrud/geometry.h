// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_GEOMETRY_H_
#define CDRUD_GEOMETRY_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cdrud/common.h"

namespace cdrud {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double Dot(const Vec3& a, const Vec3& b);
double Distance(const Vec3& a, const Vec3& b);

// Arrival direction of a far-field plane wave. Azimuth is measured in the
// x-y plane from +x, elevation from that plane toward +z.
struct Direction {
  double azimuth = 0.0;
  double elevation = 0.0;

  Vec3 UnitVector() const;
  bool IsFinite() const;
};

struct MicPair {
  std::size_t first;
  std::size_t second;
};

class ArrayGeometry {
 public:
  // Throws std::invalid_argument for fewer than two mics, coincident mics or
  // a non-positive speed of sound.
  explicit ArrayGeometry(std::vector<Vec3> mics, double speed_of_sound = kDefaultSpeedOfSound);

  // n mics on a horizontal circle centred at the origin with the given
  // distance between neighbours.
  static ArrayGeometry UniformCircle(std::size_t n, double adjacent_spacing,
                                     double speed_of_sound = kDefaultSpeedOfSound);
  // 8-mic circle with 8 cm neighbour spacing.
  static ArrayGeometry Default();

  std::size_t NumMics() const { return mics_.size(); }
  // C(C, 2) pairs ordered (0,1), (0,2), ..., (C-2, C-1).
  std::size_t NumPairs() const { return pairs_.size(); }
  const std::vector<Vec3>& mics() const { return mics_; }
  const Vec3& mic(std::size_t i) const { return mics_.at(i); }
  const std::vector<MicPair>& pairs() const { return pairs_; }
  const MicPair& pair(std::size_t m) const { return pairs_.at(m); }
  double PairDistance(std::size_t m) const;
  double speed_of_sound() const { return speed_of_sound_; }

  // Arrival time at mic i relative to the origin for a plane wave from `doa`.
  double ArrivalDelay(std::size_t i, const Direction& doa) const;

  bool operator==(const ArrayGeometry& other) const;

 private:
  std::vector<Vec3> mics_;
  std::vector<MicPair> pairs_;
  double speed_of_sound_;
};

// Text format: one "x y z" line per microphone (meters), optional
// "speed_of_sound <m/s>" line, '#' starts a comment.
ArrayGeometry ParseGeometry(std::string_view text);
ArrayGeometry ReadGeometry(const std::filesystem::path& path);
std::string FormatGeometry(const ArrayGeometry& geometry);

}  // namespace cdrud

#endif  // CDRUD_GEOMETRY_H_
