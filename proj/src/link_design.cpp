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

#include "oamheal/link_design.hpp"

#include <cmath>
#include <string>

#include "oamheal/error.hpp"
#include "oamheal/units.hpp"

namespace oamheal::link {

void LinkBudget::validate() const {
  auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument,
           std::string("link budget: ") + name + " must be positive");
    }
  };
  require_positive(bandwidth_hz, "bandwidth_hz");
  require_positive(static_cast<double>(num_modes), "num_modes");
  require_positive(link_distance_m, "link_distance_m");
  require_positive(rx_spacing_m, "rx_spacing_m");
  require_positive(digital_if_hz, "digital_if_hz");
  require_positive(rf_frequency_hz, "rf_frequency_hz");
  if (!(bandwidth_hz < digital_if_hz)) {
    fail(ErrorCode::InvalidArgument,
         "link budget: bandwidth must be below the digital IF");
  }
}

double max_beam_radius(const LinkBudget& budget) {
  budget.validate();
  return budget.rx_spacing_m * budget.digital_if_hz /
         (2.0 * budget.bandwidth_hz);
}

double tx_radius(int num_modes, double wavelength_m, double link_distance_m,
                 double beam_radius_m) {
  if (!(beam_radius_m > 0.0) || num_modes < 2) {
    fail(ErrorCode::DegenerateGeometry,
         "tx_radius: needs beam radius > 0 and at least two modes");
  }
  return (num_modes - 1) * wavelength_m * link_distance_m /
         (4.0 * kPi * beam_radius_m);
}

double far_field_distance(double tx_radius_m, double wavelength_m) {
  const double aperture = 2.0 * tx_radius_m;
  return 2.0 * aperture * aperture / wavelength_m;
}

std::int64_t num_elements(double tx_radius_m, double wavelength_m) {
  // Small epsilon keeps exact multiples (r = nλ/4π) from flooring down.
  const double n = 4.0 * kPi * tx_radius_m / wavelength_m;
  return static_cast<std::int64_t>(std::floor(n * (1.0 + 1e-12)));
}

LinkDerived derive_link(const LinkBudget& budget, double beam_radius_m,
                        double wavelength_override_m) {
  const double bound = max_beam_radius(budget);
  if (!(beam_radius_m < bound)) {
    fail(ErrorCode::BeamRadiusTooLarge,
         "derive_link: beam radius " + std::to_string(beam_radius_m) +
             " m is not below the bound " + std::to_string(bound) + " m");
  }
  LinkDerived out;
  out.beam_radius_m = beam_radius_m;
  out.wavelength_m = wavelength_override_m > 0.0
                         ? wavelength_override_m
                         : wavelength_from_frequency(budget.rf_frequency_hz);
  out.tx_radius_m = tx_radius(budget.num_modes, out.wavelength_m,
                              budget.link_distance_m, beam_radius_m);
  out.far_field_m = far_field_distance(out.tx_radius_m, out.wavelength_m);
  out.num_elements = num_elements(out.tx_radius_m, out.wavelength_m);
  return out;
}

TableComparison compare_with_published(const LinkBudget& budget,
                                       double beam_radius_m,
                                       double wavelength_override_m) {
  auto off = [](double computed, double published) {
    return std::abs(computed - published) > kTableTolerance * std::abs(published);
  };
  TableComparison cmp;
  cmp.computed = derive_link(budget, beam_radius_m, wavelength_override_m);
  cmp.computed_radius_bound_m = max_beam_radius(budget);
  cmp.radius_bound_discrepancy =
      off(cmp.computed_radius_bound_m, PublishedTable::beam_radius_bound_m) ||
      off(beam_radius_m, PublishedTable::beam_radius_bound_m);
  cmp.tx_radius_discrepancy =
      off(cmp.computed.tx_radius_m, PublishedTable::tx_radius_m);
  cmp.far_field_discrepancy =
      off(cmp.computed.far_field_m, PublishedTable::far_field_m);
  cmp.num_elements_discrepancy =
      cmp.computed.num_elements != PublishedTable::num_elements;
  return cmp;
}

}  // namespace oamheal::link
