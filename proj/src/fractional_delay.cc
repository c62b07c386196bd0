// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/fractional_delay.h"

#include <cmath>
#include <stdexcept>

#include "cdrud/common.h"

namespace cdrud {

namespace {

double WindowedSinc(double t, double half_width) {
  if (std::abs(t) >= half_width) return 0.0;
  const double w = 0.42 + 0.5 * std::cos(kPi * t / half_width) + 0.08 * std::cos(2.0 * kPi * t / half_width);
  if (t == 0.0) return w;
  return w * std::sin(kPi * t) / (kPi * t);
}

}  // namespace

std::vector<double> FractionalDelay(std::span<const double> input, double delay, int taps) {
  if (taps < 2 || taps % 2 != 0) throw std::invalid_argument("tap count must be even and >= 2");
  if (!std::isfinite(delay)) throw std::invalid_argument("delay must be finite");
  const long n = static_cast<long>(input.size());
  std::vector<double> out(input.size(), 0.0);

  const double whole = std::floor(delay);
  const double frac = delay - whole;
  const long shift = static_cast<long>(whole);
  const int half = taps / 2;
  if (frac == 0.0) {
    for (long i = 0; i < n; ++i) {
      const long src = i - shift;
      if (src >= 0 && src < n) out[i] = input[src];
    }
    return out;
  }
  // Taps h[j] for source index i - shift - j, j in [-half + 1, half].
  std::vector<double> h(taps);
  for (int j = -half + 1; j <= half; ++j) {
    h[j + half - 1] = WindowedSinc(static_cast<double>(j) - frac, static_cast<double>(half));
  }
  for (long i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = -half + 1; j <= half; ++j) {
      const long src = i - shift - j;
      if (src < 0 || src >= n) continue;
      acc += h[j + half - 1] * input[src];
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace cdrud
