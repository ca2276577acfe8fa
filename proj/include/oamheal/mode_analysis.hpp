// SPDX-License-Identifier: Apache-2.0
//
// oamheal: OAM beam self-healing link simulator
// Copyright (C) 2026 The oamheal authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "oamheal/field.hpp"
#include "oamheal/propagation.hpp"

namespace oamheal::modes {

/// Azimuthal power spectrum of a field sampled on a centered ring.
struct ModeSpectrum {
  std::map<int, double> powers;  // m in [-M, M] -> fraction of ring power
  double ring_radius_m = 0.0;
  double z_m = 0.0;

  double power(int m) const;
  double total() const;
};

/// Samples the field on a centered ring (bilinear), takes the DFT over
/// azimuth and normalizes each mode by the total ring power.
ModeSpectrum azimuthal_spectrum(const ScalarField& field, double ring_radius_m,
                                int max_mode);

/// Radial band [inner, outer] around the beam axis, full azimuth.
struct Annulus {
  double inner_m = 0.0;
  double outer_m = 0.0;

  static Annulus around(double radius_m, double inner_factor = 0.5,
                        double outer_factor = 1.5) {
    return {inner_factor * radius_m, outer_factor * radius_m};
  }
};

/// |<a, b>|² / (|a|²|b|²) over the annulus. Symmetric and scale invariant.
double field_similarity(const ScalarField& obstructed, const ScalarField& clear,
                        const Annulus& region);

struct HealingCurve {
  std::vector<double> z_m;
  std::vector<double> similarity;
  std::vector<double> mode_purity;  // obstructed-field power fraction in ℓ
};

/// Inputs for a clear vs obstructed trace of one beam.
struct HealingSetup {
  const ScalarField* source = nullptr;  // z = 0 plane
  int mode = 2;
  std::optional<propagation::ObstructionMask> obstruction;
  std::function<double(double)> ring_radius;  // R(z) for annulus and purity
  double annulus_inner = 0.5;
  double annulus_outer = 1.5;
  propagation::PropagationOptions propagation;
};

/// Fields at the last traced plane, kept for receiver sampling.
struct HealingTrace {
  HealingCurve curve;
  std::optional<ScalarField> clear_final;
  std::optional<ScalarField> obstructed_final;
};

/// Propagates the clear beam and (if present) the masked beam in lockstep and
/// records similarity and mode purity at each plane. z samples must be
/// strictly increasing and beyond the obstruction plane.
HealingTrace trace_healing(const HealingSetup& setup, const std::vector<double>& z_samples);

HealingCurve healing_curve(const HealingSetup& setup, const std::vector<double>& z_samples);

}  // namespace oamheal::modes
