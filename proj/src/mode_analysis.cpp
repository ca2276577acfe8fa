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

#include "oamheal/mode_analysis.hpp"

#include <cmath>
#include <string>

#include "oamheal/error.hpp"
#include "oamheal/units.hpp"

namespace oamheal::modes {

double ModeSpectrum::power(int m) const {
  const auto it = powers.find(m);
  return it == powers.end() ? 0.0 : it->second;
}

double ModeSpectrum::total() const {
  double sum = 0.0;
  for (const auto& [m, p] : powers) sum += p;
  return sum;
}

ModeSpectrum azimuthal_spectrum(const ScalarField& field, double ring_radius_m,
                                int max_mode) {
  if (max_mode < 0) fail(ErrorCode::InvalidArgument, "max_mode must be >= 0");
  const double dx = field.spacing();
  const double half_extent = (static_cast<double>(field.side() / 2) - 1.0) * dx;
  if (!(ring_radius_m > 0.0) || ring_radius_m > half_extent) {
    fail(ErrorCode::RingOutsideGrid, "azimuthal_spectrum: ring radius " +
                                         std::to_string(ring_radius_m) +
                                         " m does not fit in the grid");
  }
  const double circumference_px = kTwoPi * ring_radius_m / dx;
  if (circumference_px < 4.0 * max_mode) {
    fail(ErrorCode::UndersampledRing,
         "azimuthal_spectrum: ring spans " + std::to_string(circumference_px) +
             " grid samples, fewer than 4 per requested mode");
  }

  // Oversample the interpolated ring well beyond the grid resolution so the
  // trapezoid sum tracks the bilinear surface closely.
  const auto count = static_cast<std::size_t>(std::max(
      {4.0 * max_mode, 16.0 * std::ceil(circumference_px), 1024.0}));
  std::vector<propagation::Point> pts(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double phi = kTwoPi * static_cast<double>(s) / static_cast<double>(count);
    pts[s] = {ring_radius_m * std::cos(phi), ring_radius_m * std::sin(phi)};
  }
  const auto values = propagation::sample_points(field, pts);

  double ring_power = 0.0;
  for (const auto& v : values) ring_power += std::norm(v);
  ring_power /= static_cast<double>(count);

  ModeSpectrum spec;
  spec.ring_radius_m = ring_radius_m;
  spec.z_m = field.z();
  for (int m = -max_mode; m <= max_mode; ++m) {
    cplx acc{0.0, 0.0};
    // e^{-jmφ_s} by exact index reduction keeps the twiddles accurate.
    for (std::size_t s = 0; s < count; ++s) {
      const auto idx = static_cast<long long>(s) * m;
      const auto reduced = ((idx % static_cast<long long>(count)) +
                            static_cast<long long>(count)) %
                           static_cast<long long>(count);
      const double phi = kTwoPi * static_cast<double>(reduced) / static_cast<double>(count);
      acc += values[s] * cplx{std::cos(phi), -std::sin(phi)};
    }
    acc /= static_cast<double>(count);
    spec.powers[m] = ring_power > 0.0 ? std::norm(acc) / ring_power : 0.0;
  }
  return spec;
}

double field_similarity(const ScalarField& obstructed, const ScalarField& clear,
                        const Annulus& region) {
  if (!obstructed.same_geometry(clear)) {
    fail(ErrorCode::GeometryMismatch,
         "field_similarity: fields differ in grid, plane or wavelength");
  }
  if (!(region.outer_m > region.inner_m) || region.inner_m < 0.0) {
    fail(ErrorCode::InvalidArgument, "field_similarity: empty annulus");
  }
  const auto& g = clear.grid();
  const double r_in2 = region.inner_m * region.inner_m;
  const double r_out2 = region.outer_m * region.outer_m;
  cplx cross{0.0, 0.0};
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t j = 0; j < g.side; ++j) {
    const double y = g.coord(j);
    for (std::size_t i = 0; i < g.side; ++i) {
      const double x = g.coord(i);
      const double r2 = x * x + y * y;
      if (r2 < r_in2 || r2 > r_out2) continue;
      const cplx a = obstructed.at(i, j);
      const cplx b = clear.at(i, j);
      cross += a * std::conj(b);
      norm_a += std::norm(a);
      norm_b += std::norm(b);
    }
  }
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return std::min(1.0, std::norm(cross) / (norm_a * norm_b));
}

HealingTrace trace_healing(const HealingSetup& setup,
                           const std::vector<double>& z_samples) {
  if (setup.source == nullptr) {
    fail(ErrorCode::InvalidArgument, "healing: no source field");
  }
  if (!setup.ring_radius) {
    fail(ErrorCode::InvalidArgument, "healing: no ring-radius model");
  }
  if (z_samples.empty()) fail(ErrorCode::InvalidArgument, "healing: no z samples");
  const double start_z = setup.source->z();
  double previous = setup.obstruction ? setup.obstruction->z_m : start_z;
  for (const double z : z_samples) {
    if (!(z > previous)) {
      fail(ErrorCode::InvalidArgument,
           "healing: z samples must increase strictly and lie beyond the obstruction");
    }
    previous = z;
  }

  const auto& opts = setup.propagation;
  ScalarField clear = *setup.source;
  std::optional<ScalarField> blocked;
  if (setup.obstruction) {
    const double dz = setup.obstruction->z_m - start_z;
    if (dz > 0.0) clear = propagation::propagate(clear, dz, opts);
    blocked = propagation::apply_mask(clear, *setup.obstruction);
  }

  HealingTrace trace;
  for (const double z : z_samples) {
    const double dz = z - clear.z();
    clear = propagation::propagate(clear, dz, opts);
    if (blocked) blocked = propagation::propagate(*blocked, dz, opts);
    const ScalarField& observed = blocked ? *blocked : clear;

    const double radius = setup.ring_radius(z);
    const Annulus region = Annulus::around(radius, setup.annulus_inner, setup.annulus_outer);
    trace.curve.z_m.push_back(z);
    trace.curve.similarity.push_back(
        blocked ? field_similarity(*blocked, clear, region) : 1.0);
    // Purity only needs the modes up to the transmitted one plus a margin.
    const int max_mode = std::abs(setup.mode) + 8;
    trace.curve.mode_purity.push_back(
        azimuthal_spectrum(observed, radius, max_mode).power(setup.mode));
  }
  trace.clear_final = std::move(clear);
  if (blocked) trace.obstructed_final = std::move(blocked);
  return trace;
}

HealingCurve healing_curve(const HealingSetup& setup,
                           const std::vector<double>& z_samples) {
  return trace_healing(setup, z_samples).curve;
}

}  // namespace oamheal::modes
