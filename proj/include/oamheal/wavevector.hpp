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

#include "oamheal/beam_synthesis.hpp"

namespace oamheal::wavevector {

/// Rectangular guide of broad wall a carrying a plane wave at tilt α,
/// cos α = λ/a.
struct WaveguideGeom {
  double broad_wall_m = 0.0;
  double wavelength_m = 0.0;

  /// Throws ErrorCode::Cutoff unless a > λ.
  double tilt_alpha() const;
};

/// (k, k_z, k_T) with k² = k_z² + k_T².
struct WaveVectorTriple {
  double k = 0.0;
  double k_z = 0.0;
  double k_T = 0.0;
};

/// Guide wavelength λ/sqrt(1 − (λ/a)²); cutoff error when a <= λ.
double guide_wavelength_rect(double broad_wall_m, double wavelength_m);

/// Coaxial guide of radius r carrying mode ℓ: λ/sqrt(1 − (ℓλ/2πr)²);
/// cutoff error when |ℓ|λ >= 2πr.
double guide_wavelength_coax(double radius_m, double wavelength_m, OamMode mode);

/// k_z = 2π/λ_z, k_T = |ℓ|/R, k = sqrt(k_z² + k_T²).
WaveVectorTriple wavevectors_at(double beam_radius_m, double guide_wavelength_m,
                                OamMode mode);

/// Far-field cone radius R(L) = L(|ℓ|+1)/(r k), taking the intensity peak at
/// x = |ℓ|+1. With exact_peak the true first maximum j'_{|ℓ|,1} replaces |ℓ|+1.
double beam_radius_at(double distance_m, OamMode mode, double tx_radius_m,
                      double wavenumber, bool exact_peak = false);

enum class Healing { FirstHealsMore, SecondHealsMore, Tie };

/// The mode with the larger tangential wave vector |ℓ|/R heals more.
Healing healing_prediction(OamMode first, OamMode second, double beam_radius_m);

}  // namespace oamheal::wavevector
