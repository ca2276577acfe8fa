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

#include <complex>

#include "oamheal/field.hpp"

namespace oamheal {

inline constexpr int kMaxOamOrder = 16;

/// Topological charge of a vortex beam. |order| <= 16.
class OamMode {
 public:
  explicit OamMode(int order);
  int order() const { return order_; }
  int magnitude() const { return order_ < 0 ? -order_ : order_; }
  bool operator==(const OamMode&) const = default;

 private:
  int order_;
};

}  // namespace oamheal

namespace oamheal::beam {

/// Uniform circular array of point radiators with phase e^{jℓφ_n}.
struct SourceRing {
  double radius_m = 0.149;
  int num_elements = 238;
  OamMode mode{2};
  double amplitude = 1.0;

  /// Throws ErrorCode::Nyquist when num_elements <= 2|ℓ|.
  void validate() const;
};

/// Analytic far-field pattern (−j)^ℓ e^{jℓφ} K J_ℓ(2πr sinθ/λ).
struct FarFieldPattern {
  OamMode mode{2};
  double radius_m = 0.149;
  double wavelength_m = 0.0107;
  std::complex<double> norm{1.0, 0.0};
};

std::complex<double> far_field(const FarFieldPattern& pattern, double theta,
                               double phi);

/// Elevation of the first intensity maximum, asin(j'_{|ℓ|,1}/(k r)).
double first_max_angle(OamMode mode, double radius_m, double wavelength_m);

/// Ring radius whose first far-field maximum coincides with that of the
/// reference ring: r_ref · j'_{|target|,1} / j'_{|ref|,1}.
double matched_radius(OamMode target, OamMode reference, double reference_radius_m);

enum class SourceModel {
  PointSplat,    // N point radiators, bilinear deposit onto the grid
  AnalyticRing,  // continuous ring evaluated in the angular-spectrum domain
};

struct SourceOptions {
  SourceModel model = SourceModel::PointSplat;
  double wavelength_m = 0.0;
  // Half-angle of the radiated cone kept on the grid; components beyond it are
  // removed with a cos² taper over the outer rolloff fraction. <= 0 disables.
  double angular_aperture_deg = 5.0;
  double rolloff_fraction = 0.2;
};

/// Source-plane field at z = 0, normalized to unit power (Σ|u|²dA = 1).
ScalarField synthesize_source_field(const SourceRing& ring, const GridSpec& grid,
                                    const SourceOptions& options);

}  // namespace oamheal::beam
