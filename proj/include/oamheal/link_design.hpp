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

#include <cstdint>

namespace oamheal::link {

/// Desired link specification: the independent inputs of the link design.
struct LinkBudget {
  double bandwidth_hz = 20.0e6;
  int num_modes = 5;
  double link_distance_m = 50.0;
  double rx_spacing_m = 0.20;   // maximum UE antenna spacing
  double digital_if_hz = 983.04e6;
  double rf_frequency_hz = 28.0e9;

  /// Throws ErrorCode::InvalidArgument when a field is non-positive or the
  /// bandwidth is not below the digital IF.
  void validate() const;
};

/// Dependent geometry derived from a LinkBudget and an operating beam radius.
struct LinkDerived {
  double beam_radius_m = 0.0;
  double wavelength_m = 0.0;
  double tx_radius_m = 0.0;
  double far_field_m = 0.0;
  std::int64_t num_elements = 0;
};

/// Exclusive upper bound on the usable beam radius, dF/(2B).
double max_beam_radius(const LinkBudget& budget);

/// Transmit ring radius (K-1)·λ·L/(4πR) that spreads K modes over radius R.
double tx_radius(int num_modes, double wavelength_m, double link_distance_m,
                 double beam_radius_m);

/// Far-field onset 2(2r)²/λ for a ring of radius r.
double far_field_distance(double tx_radius_m, double wavelength_m);

/// Half-wavelength element count around the ring, floor(4πr/λ).
std::int64_t num_elements(double tx_radius_m, double wavelength_m);

/// Chains the relations above. The wavelength defaults to c/f; pass a positive
/// override (e.g. the rounded 0.011 m) to reproduce tabulated values.
LinkDerived derive_link(const LinkBudget& budget, double beam_radius_m,
                        double wavelength_override_m = 0.0);

/// Published values for the 28 GHz link, used for side-by-side reporting.
struct PublishedTable {
  static constexpr double beam_radius_bound_m = 2.4576;
  static constexpr double beam_radius_m = 0.87;
  static constexpr double wavelength_m = 0.011;
  static constexpr double tx_radius_m = 0.201;
  static constexpr double far_field_m = 32.35;
  static constexpr std::int64_t num_elements = 238;
};

/// Computed values next to the published ones. A flag is raised for every
/// quantity whose published value does not follow from the stated relation.
struct TableComparison {
  LinkDerived computed;
  double computed_radius_bound_m = 0.0;
  bool radius_bound_discrepancy = false;
  bool tx_radius_discrepancy = false;
  bool far_field_discrepancy = false;
  bool num_elements_discrepancy = false;
};

/// Relative tolerance used to decide whether a published value is reproduced.
inline constexpr double kTableTolerance = 0.005;

TableComparison compare_with_published(const LinkBudget& budget,
                                       double beam_radius_m,
                                       double wavelength_override_m);

}  // namespace oamheal::link
