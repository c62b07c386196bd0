// Copyright 2026 The cdrud Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CDRUD_CDR_H_
#define CDRUD_CDR_H_

#include <complex>

#include "cdrud/common.h"

namespace cdrud {

// How negative sinc lobes of the diffuse-field coherence are brought into
// [0, 1] before estimation.
enum class DiffuseLobes { kClip, kAbs };

struct CdrOptions {
  double cdr_max = kDefaultCdrMax;
  DiffuseLobes lobes = DiffuseLobes::kClip;
};

double ConditionDiffuseCoherence(double gamma_diff, DiffuseLobes lobes);

// DOA-independent coherent-to-diffuse ratio from a measured coherence and
// the diffuse-field coherence:
//
//   CDR = (Gd Re{G} - |G|^2 - sqrt(Gd^2 Re{G}^2 - Gd^2 |G|^2 + Gd^2
//          - 2 Gd Re{G} + |G|^2)) / (|G|^2 - 1)
//
// The radicand is clamped at zero, |G| >= 1 returns cdr_max, and the result
// is clamped to [0, cdr_max]. Expects |gamma| <= 1 and 0 <= gamma_diff <= 1.
double CdrFromCoherence(std::complex<double> gamma, double gamma_diff, double cdr_max = kDefaultCdrMax);

// 1 / (1 + cdr).
inline double Diffuseness(double cdr) { return 1.0 / (1.0 + cdr); }

// Forward model used to validate the estimator: a coherent component with
// unit-modulus coherence exp(i theta) mixed with a diffuse component.
std::complex<double> MixedCoherence(double cdr, double theta, double gamma_diff);

}  // namespace cdrud

#endif  // CDRUD_CDR_H_
