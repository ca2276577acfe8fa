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

#include "oamheal/wavevector.hpp"

#include <cmath>
#include <string>

#include "oamheal/bessel.hpp"
#include "oamheal/error.hpp"
#include "oamheal/units.hpp"

namespace oamheal::wavevector {

double WaveguideGeom::tilt_alpha() const {
  if (!(broad_wall_m > wavelength_m) || !(wavelength_m > 0.0)) {
    fail(ErrorCode::Cutoff, "waveguide: broad wall must exceed the wavelength");
  }
  return std::acos(wavelength_m / broad_wall_m);
}

double guide_wavelength_rect(double broad_wall_m, double wavelength_m) {
  if (std::isinf(broad_wall_m)) return wavelength_m;
  // λ_z = a / tan α with cos α = λ/a.
  const WaveguideGeom geom{broad_wall_m, wavelength_m};
  geom.tilt_alpha();
  const double ratio = wavelength_m / broad_wall_m;
  return wavelength_m / std::sqrt(1.0 - ratio * ratio);
}

double guide_wavelength_coax(double radius_m, double wavelength_m, OamMode mode) {
  const double circumference = kTwoPi * radius_m;
  const double wrapped = mode.magnitude() * wavelength_m;
  if (!(wrapped < circumference)) {
    fail(ErrorCode::Cutoff, "coaxial guide: |l|·λ = " + std::to_string(wrapped) +
                                " m reaches the circumference 2πr = " +
                                std::to_string(circumference) + " m");
  }
  const double ratio = wrapped / circumference;
  return wavelength_m / std::sqrt(1.0 - ratio * ratio);
}

WaveVectorTriple wavevectors_at(double beam_radius_m, double guide_wavelength_m,
                                OamMode mode) {
  if (!(beam_radius_m > 0.0) || !(guide_wavelength_m > 0.0)) {
    fail(ErrorCode::InvalidArgument, "wavevectors_at: R and λ_z must be positive");
  }
  WaveVectorTriple t;
  t.k_z = kTwoPi / guide_wavelength_m;
  t.k_T = mode.magnitude() / beam_radius_m;
  t.k = std::hypot(t.k_z, t.k_T);
  return t;
}

double beam_radius_at(double distance_m, OamMode mode, double tx_radius_m,
                      double wavenumber, bool exact_peak) {
  if (!(tx_radius_m > 0.0) || !(wavenumber > 0.0)) {
    fail(ErrorCode::InvalidArgument, "beam_radius_at: r and k must be positive");
  }
  const double peak = exact_peak && mode.order() != 0
                          ? bessel_first_max(mode.magnitude())
                          : mode.magnitude() + 1.0;
  return distance_m * peak / (tx_radius_m * wavenumber);
}

Healing healing_prediction(OamMode first, OamMode second, double beam_radius_m) {
  if (!(beam_radius_m > 0.0)) {
    fail(ErrorCode::InvalidArgument, "healing_prediction: R must be positive");
  }
  const double a = first.magnitude() / beam_radius_m;
  const double b = second.magnitude() / beam_radius_m;
  if (a == b) return Healing::Tie;
  return a > b ? Healing::FirstHealsMore : Healing::SecondHealsMore;
}

}  // namespace oamheal::wavevector
