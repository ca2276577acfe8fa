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

#include <vector>

#include "oamheal/field.hpp"

namespace oamheal::propagation {

struct PropagationOptions {
  // Zero-padding factor of the transform domain (1, 2 or 4). Energy that
  // leaves the physical window within one sub-step lands in the padding and
  // is discarded, so the window edge behaves as an absorber.
  int padding = 2;
  double max_step_m = 10.0;
  // Spectral energy fraction that may be removed by the evanescent cutoff and
  // the anti-aliasing band limit before propagate() reports a sampling error.
  double max_truncated_fraction = 1e-6;
};

struct PropagationStats {
  int steps = 0;
  double truncated_fraction = 0.0;  // worst sub-step
  double cropped_fraction = 0.0;    // summed over sub-steps
};

struct PropagationResult {
  ScalarField field;
  PropagationStats stats;
};

/// Band-limited angular-spectrum propagation by dz > 0: FFT, multiply by
/// exp(j·dz·kz) on propagating components inside the anti-aliasing limit
/// 1/(λ·sqrt((2·Δf·dz)² + 1)) per axis, inverse FFT. Long hops are split into
/// equal sub-steps no longer than options.max_step_m.
PropagationResult propagate_detailed(const ScalarField& field, double dz_m,
                                     const PropagationOptions& options = {});

ScalarField propagate(const ScalarField& field, double dz_m,
                      const PropagationOptions& options = {});

/// Anti-aliasing frequency limit (cycles/m) for one sub-step.
double band_limit(double wavelength_m, double transform_extent_m, double dz_m);

enum class MaskShape { Disk, Rectangle };

struct ObstructionMask {
  MaskShape shape = MaskShape::Rectangle;
  double center_x_m = 0.0;
  double center_y_m = 0.0;
  double width_m = 0.5;   // diameter for disks
  double height_m = 1.0;  // unused for disks
  double z_m = 10.0;
  double transmittance = 0.0;

  void validate() const;
  bool covers(double x, double y) const;
};

/// Pointwise multiply by the mask transmittance map (1 outside the shape).
ScalarField apply_mask(const ScalarField& field, const ObstructionMask& mask);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Bilinear interpolation of the field at each point.
std::vector<cplx> sample_points(const ScalarField& field,
                                const std::vector<Point>& points);

}  // namespace oamheal::propagation
