// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cdrud/cdr.h"

#include <algorithm>
#include <cmath>

namespace cdrud {

double ConditionDiffuseCoherence(double gamma_diff, DiffuseLobes lobes) {
  const double g = lobes == DiffuseLobes::kAbs ? std::abs(gamma_diff) : std::max(0.0, gamma_diff);
  return std::min(g, 1.0);
}

double CdrFromCoherence(std::complex<double> gamma, double gamma_diff, double cdr_max) {
  const double re = gamma.real();
  const double mag2 = std::norm(gamma);
  if (!(mag2 < 1.0)) return cdr_max;
  const double gd = gamma_diff;
  const double gd2 = gd * gd;
  const double radicand = gd2 * re * re - gd2 * mag2 + gd2 - 2.0 * gd * re + mag2;
  const double numerator = gd * re - mag2 - std::sqrt(std::max(0.0, radicand));
  const double cdr = numerator / (mag2 - 1.0);
  if (std::isnan(cdr)) return cdr_max;
  return std::clamp(cdr, 0.0, cdr_max);
}

std::complex<double> MixedCoherence(double cdr, double theta, double gamma_diff) {
  return (cdr * std::polar(1.0, theta) + gamma_diff) / (cdr + 1.0);
}

}  // namespace cdrud
