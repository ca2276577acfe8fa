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

#include "oamheal/beam_synthesis.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "fft.hpp"
#include "oamheal/bessel.hpp"
#include "oamheal/error.hpp"
#include "oamheal/units.hpp"

namespace oamheal {

OamMode::OamMode(int order) : order_(order) {
  if (order < -kMaxOamOrder || order > kMaxOamOrder) {
    fail(ErrorCode::InvalidArgument,
         "OAM order " + std::to_string(order) + " exceeds |l| <= 16");
  }
}

}  // namespace oamheal

namespace oamheal::beam {

namespace {

// (−j)^ℓ
std::complex<double> minus_j_power(int order) {
  switch (((order % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

// J_ℓ(x) for signed ℓ via J_{−n} = (−1)^n J_n.
double signed_bessel(int order, double x) {
  const int n = order < 0 ? -order : order;
  const double v = bessel_j_table(n, x)[static_cast<std::size_t>(n)];
  return (order < 0 && n % 2 == 1) ? -v : v;
}

inline std::size_t wrap_index(std::size_t i, std::size_t n) {
  return (i + n - n / 2) % n;
}

double aperture_weight(double f, double f_max, double rolloff) {
  if (f >= f_max) return 0.0;
  const double start = (1.0 - rolloff) * f_max;
  if (f <= start || rolloff <= 0.0) return 1.0;
  const double c = std::cos(0.5 * kPi * (f - start) / (f_max - start));
  return c * c;
}

// Spectrum-domain buffer with the spatial origin at index 0.
void to_spectrum_layout(const ScalarField& field, aligned_vector<cplx>& buf) {
  const std::size_t n = field.side();
  buf.assign(n * n, cplx{});
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      buf[wrap_index(j, n) * n + wrap_index(i, n)] = field.at(i, j);
    }
  }
}

void from_spectrum_layout(const aligned_vector<cplx>& buf, ScalarField& field) {
  const std::size_t n = field.side();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      field.at(i, j) = buf[wrap_index(j, n) * n + wrap_index(i, n)];
    }
  }
}

double signed_frequency(std::size_t k, std::size_t n, double df) {
  return (k < n / 2 ? static_cast<double>(k)
                    : static_cast<double>(k) - static_cast<double>(n)) * df;
}

void normalize_power(ScalarField& field) {
  const double p = field.power();
  if (!(p > 0.0)) {
    fail(ErrorCode::DegenerateGeometry, "source field has zero power");
  }
  field.scale(1.0 / std::sqrt(p));
}

}  // namespace

void SourceRing::validate() const {
  if (!(radius_m > 0.0)) {
    fail(ErrorCode::InvalidArgument, "source ring radius must be positive");
  }
  if (num_elements <= 2 * mode.magnitude()) {
    fail(ErrorCode::Nyquist, "source ring: " + std::to_string(num_elements) +
                                 " elements cannot carry mode " +
                                 std::to_string(mode.order()) + " (need N > 2|l|)");
  }
}

std::complex<double> far_field(const FarFieldPattern& pattern, double theta,
                               double phi) {
  const int l = pattern.mode.order();
  const double x = kTwoPi * pattern.radius_m * std::sin(theta) / pattern.wavelength_m;
  const std::complex<double> azimuth = std::polar(1.0, l * phi);
  return minus_j_power(l) * azimuth * pattern.norm * signed_bessel(l, x);
}

double first_max_angle(OamMode mode, double radius_m, double wavelength_m) {
  if (mode.order() == 0) return 0.0;
  const double k = kTwoPi / wavelength_m;
  return std::asin(bessel_first_max(mode.magnitude()) / (k * radius_m));
}

double matched_radius(OamMode target, OamMode reference, double reference_radius_m) {
  if (target.order() == 0 || reference.order() == 0) {
    fail(ErrorCode::Unmatched,
         "matched_radius: order 0 has no off-axis first maximum");
  }
  if (target.magnitude() == reference.magnitude()) return reference_radius_m;
  return reference_radius_m * bessel_first_max(target.magnitude()) /
         bessel_first_max(reference.magnitude());
}

ScalarField synthesize_source_field(const SourceRing& ring, const GridSpec& grid,
                                    const SourceOptions& options) {
  ring.validate();
  grid.validate();
  if (!(options.wavelength_m > 0.0)) {
    fail(ErrorCode::InvalidArgument, "source synthesis needs a wavelength");
  }
  if (grid.extent_m() < 4.0 * ring.radius_m) {
    fail(ErrorCode::InvalidArgument,
         "source synthesis: grid extent must be at least 4x the ring radius");
  }

  const std::size_t n = grid.side;
  const double df = 1.0 / grid.extent_m();
  const double f_max = options.angular_aperture_deg > 0.0
                           ? std::sin(deg_to_rad(options.angular_aperture_deg)) /
                                 options.wavelength_m
                           : INFINITY;
  ScalarField field(grid, 0.0, options.wavelength_m);
  aligned_vector<cplx> buf;
  const int l = ring.mode.order();

  if (options.model == SourceModel::AnalyticRing) {
    if (!std::isfinite(f_max)) {
      fail(ErrorCode::InvalidArgument,
           "analytic ring source requires a finite angular aperture");
    }
    // FT of δ(ρ − r)e^{jℓφ}: 2πr (−j)^ℓ e^{jℓψ} J_ℓ(2πrf).
    buf.assign(n * n, cplx{});
    const cplx prefactor = minus_j_power(l) * (kTwoPi * ring.radius_m * ring.amplitude);
    for (std::size_t ky = 0; ky < n; ++ky) {
      const double fy = signed_frequency(ky, n, df);
      for (std::size_t kx = 0; kx < n; ++kx) {
        const double fx = signed_frequency(kx, n, df);
        const double f = std::hypot(fx, fy);
        const double w = aperture_weight(f, f_max, options.rolloff_fraction);
        if (w == 0.0) continue;
        const double psi = std::atan2(fy, fx);
        buf[ky * n + kx] = prefactor * std::polar(1.0, l * psi) *
                           (w * signed_bessel(l, kTwoPi * ring.radius_m * f));
      }
    }
    detail::fft2d(buf, n, true);
    from_spectrum_layout(buf, field);
    normalize_power(field);
    return field;
  }

  const double inv_dx = 1.0 / grid.spacing_m;
  const double half = static_cast<double>(n / 2);
  for (int e = 0; e < ring.num_elements; ++e) {
    const double phi = kTwoPi * e / ring.num_elements;
    const double fi = ring.radius_m * std::cos(phi) * inv_dx + half;
    const double fj = ring.radius_m * std::sin(phi) * inv_dx + half;
    const auto i0 = static_cast<std::size_t>(std::floor(fi));
    const auto j0 = static_cast<std::size_t>(std::floor(fj));
    const double a = fi - static_cast<double>(i0);
    const double b = fj - static_cast<double>(j0);
    const cplx weight = std::polar(ring.amplitude, l * phi);
    field.at(i0, j0) += weight * ((1 - a) * (1 - b));
    field.at(i0 + 1, j0) += weight * (a * (1 - b));
    field.at(i0, j0 + 1) += weight * ((1 - a) * b);
    field.at(i0 + 1, j0 + 1) += weight * (a * b);
  }

  if (std::isfinite(f_max)) {
    to_spectrum_layout(field, buf);
    detail::fft2d(buf, n, false);
    for (std::size_t ky = 0; ky < n; ++ky) {
      const double fy = signed_frequency(ky, n, df);
      for (std::size_t kx = 0; kx < n; ++kx) {
        const double f = std::hypot(signed_frequency(kx, n, df), fy);
        buf[ky * n + kx] *= aperture_weight(f, f_max, options.rolloff_fraction);
      }
    }
    detail::fft2d(buf, n, true);
    from_spectrum_layout(buf, field);
  }
  normalize_power(field);
  return field;
}

}  // namespace oamheal::beam
