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

#include <chrono>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oamheal/beam_synthesis.hpp"
#include "oamheal/error.hpp"
#include "oamheal/mode_analysis.hpp"
#include "oamheal/propagation.hpp"
#include "oamheal/units.hpp"
#include "oamheal/wavevector.hpp"
#include "oracles/rayleigh_sommerfeld.hpp"
#include "support.hpp"

using namespace oamheal;
using namespace oamheal::propagation;

namespace {

constexpr double kLambda = 0.010707;

// Sum of Gaussian beamlets with random centres, waists, tilts and weights.
ScalarField beamlets(const GridSpec& grid, double wavelength, int count, double waist,
                     double centre_span, double max_tilt, std::uint64_t seed) {
  test::Gen g(seed);
  ScalarField u(grid, 0.0, wavelength);
  for (int b = 0; b < count; ++b) {
    const double cx = g.uniform(-centre_span, centre_span);
    const double cy = g.uniform(-centre_span, centre_span);
    const double w = waist * g.uniform(0.8, 1.25);
    const double kx = g.uniform(-max_tilt, max_tilt);
    const double ky = g.uniform(-max_tilt, max_tilt);
    const cplx a = g.complex_normal();
    for (std::size_t j = 0; j < grid.side; ++j) {
      for (std::size_t i = 0; i < grid.side; ++i) {
        const double x = grid.coord(i) - cx;
        const double y = grid.coord(j) - cy;
        u.at(i, j) += a * std::exp(-(x * x + y * y) / (w * w)) *
                      std::polar(1.0, kx * grid.coord(i) + ky * grid.coord(j));
      }
    }
  }
  return u;
}

double max_relative_power_change(const ScalarField& a, const ScalarField& b) {
  return std::abs(a.power() - b.power()) / a.power();
}

}  // namespace

TEST_SUITE("propagation") {

TEST_CASE("plane wave is an eigenfunction of the periodic transform") {
  const auto grid = GridSpec::from_extent(64, 1.0);
  ScalarField u(grid, 0.0, kLambda);
  for (auto& v : u.samples()) v = {0.6, -0.8};
  PropagationOptions opts;
  opts.padding = 1;
  const auto out = propagate(u, 1.0, opts);
  const double k = kTwoPi / kLambda;
  const cplx expected = cplx{0.6, -0.8} * std::polar(1.0, k * 1.0);
  for (const auto& v : out.samples()) {
    CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    CHECK(std::abs(v - expected) < 1e-9);
  }
  CHECK(out.z() == doctest::Approx(1.0));
}

TEST_CASE("power conservation") {
  const auto grid = GridSpec::from_extent(256, 6.0);
  auto u = beamlets(grid, kLambda, 6, 0.3, 1.0, 10.0, 1);
  const auto r = propagate_detailed(u, 25.0);
  CHECK(r.stats.truncated_fraction < 1e-12);
  CHECK(r.stats.cropped_fraction < 1e-12);
  CHECK(r.stats.steps == 3);
  CHECK(max_relative_power_change(u, r.field) <= 1e-9);
}

TEST_CASE("semigroup") {
  const auto grid = GridSpec::from_extent(256, 6.0);
  auto u = beamlets(grid, kLambda, 6, 0.3, 1.0, 20.0, 2);
  for (int padding : {1, 2}) {
    PropagationOptions opts;
    opts.padding = padding;
    const auto two = propagate(propagate(u, 3.5, opts), 8.0, opts);
    const auto one = propagate(u, 11.5, opts);
    CHECK(test::relative_rms(two.samples(), one.samples()) <= 1e-8);
  }
}

TEST_CASE("linearity") {
  const auto grid = GridSpec::from_extent(128, 3.0);
  const auto u = beamlets(grid, kLambda, 3, 0.2, 0.5, 10.0, 3);
  const auto v = beamlets(grid, kLambda, 3, 0.2, 0.5, 10.0, 4);
  const cplx a{0.3, -1.2};
  const cplx b{-2.0, 0.5};
  ScalarField mix(grid, 0.0, kLambda);
  for (std::size_t n = 0; n < mix.samples().size(); ++n) {
    mix.samples()[n] = a * u.samples()[n] + b * v.samples()[n];
  }
  const auto pu = propagate(u, 7.0);
  const auto pv = propagate(v, 7.0);
  const auto pm = propagate(mix, 7.0);
  std::vector<cplx> combo(pm.samples().size());
  for (std::size_t n = 0; n < combo.size(); ++n) combo[n] = a * pu.samples()[n] + b * pv.samples()[n];
  CHECK(test::relative_rms(pm.samples(), combo) <= 1e-12);
}

TEST_CASE("agrees with direct Rayleigh-Sommerfeld quadrature on 64²") {
  const std::size_t n = 64;
  const double dx = kLambda / 2.0;
  const GridSpec grid{n, dx};
  const auto u = beamlets(grid, kLambda, 5, 2.0 * kLambda, 8.0 * kLambda, 0.0, 5);
  const auto asm_out = propagate(u, 0.5);
  const std::vector<cplx> input(u.samples().begin(), u.samples().end());
  const auto oracle = test::rayleigh_sommerfeld(input, n, dx, kLambda, 0.5);
  CHECK(test::relative_rms(asm_out.samples(), oracle) <= 1e-3);
}

TEST_CASE("sampling error when the spectrum exceeds the band limit") {
  const std::size_t n = 64;
  ScalarField u(GridSpec{n, kLambda / 2.0}, 0.0, kLambda);
  u.at(n / 2, n / 2) = 1.0;
  try {
    propagate(u, 0.5);
    FAIL("expected a sampling error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Sampling);
  }
  CHECK_THROWS_AS(propagate(u, 0.0), Error);
  CHECK_THROWS_AS(propagate(u, -1.0), Error);
}

TEST_CASE("l=2 cone peaks at the first maximum angle") {
  beam::SourceOptions opts;
  opts.wavelength_m = kLambda;
  const auto u0 = beam::synthesize_source_field(beam::SourceRing{0.149, 238, OamMode{2}, 1.0},
                                                GridSpec::from_extent(512, 12.0), opts);
  const auto u50 = propagate(u0, 50.0);
  double best = 0.0;
  double best_r = 0.0;
  for (double r = 0.5; r < 3.0; r += 0.005) {
    std::vector<Point> ring;
    for (int s = 0; s < 64; ++s) ring.push_back({r * std::cos(kTwoPi * s / 64), r * std::sin(kTwoPi * s / 64)});
    double mean = 0.0;
    for (const auto& v : sample_points(u50, ring)) mean += std::norm(v);
    if (mean > best) {
      best = mean;
      best_r = r;
    }
  }
  const double predicted = 50.0 * std::tan(beam::first_max_angle(OamMode{2}, 0.149, kLambda));
  CHECK(best_r == doctest::Approx(predicted).epsilon(0.05));
}

TEST_CASE("masks") {
  const auto grid = GridSpec::from_extent(128, 4.0);
  auto u = beamlets(grid, kLambda, 4, 0.4, 0.5, 0.0, 6);
  u.set_z(10.0);
  ObstructionMask clear_mask;
  clear_mask.transmittance = 1.0;
  const auto same = apply_mask(u, clear_mask);
  CHECK(test::relative_rms(same.samples(), u.samples()) == 0.0);

  ObstructionMask full;
  full.width_m = 100.0;
  full.height_m = 100.0;
  const auto blocked = apply_mask(u, full);
  for (const auto& v : blocked.samples()) CHECK(v == cplx{0.0, 0.0});

  ObstructionMask disk;
  disk.shape = MaskShape::Disk;
  disk.center_x_m = 0.3;
  disk.width_m = 0.8;
  const auto once = apply_mask(u, disk);
  const auto twice = apply_mask(once, disk);
  CHECK(test::relative_rms(twice.samples(), once.samples()) == 0.0);
  CHECK(disk.covers(0.3, 0.39));
  CHECK_FALSE(disk.covers(0.3, 0.41));

  ObstructionMask elsewhere;
  elsewhere.z_m = 11.0;
  try {
    apply_mask(u, elsewhere);
    FAIL("expected plane mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PlaneMismatch);
  }
  ObstructionMask bad;
  bad.transmittance = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ObstructionMask{};
  bad.width_m = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("shadow of a rectangle across the lower arc") {
  beam::SourceOptions opts;
  opts.wavelength_m = kLambda;
  const auto grid = GridSpec::from_extent(512, 12.0);
  const auto u0 = beam::synthesize_source_field(beam::SourceRing{0.149, 238, OamMode{2}, 1.0}, grid, opts);
  const auto u10 = propagate(u0, 10.0);
  const double R = wavevector::beam_radius_at(10.0, OamMode{2}, 0.149, kTwoPi / kLambda);
  ObstructionMask m;
  m.center_y_m = -R;
  m.width_m = 0.5;
  m.height_m = 1.0;
  const double removed = 1.0 - apply_mask(u10, m).power() / u10.power();
  // Geometric estimate: covered share of the annulus [0.5R, 1.5R].
  test::Gen g(8);
  int inside = 0;
  int covered = 0;
  while (inside < 200000) {
    const double x = g.uniform(-1.5 * R, 1.5 * R);
    const double y = g.uniform(-1.5 * R, 1.5 * R);
    const double r = std::hypot(x, y);
    if (r < 0.5 * R || r > 1.5 * R) continue;
    ++inside;
    if (m.covers(x, y)) ++covered;
  }
  const double area_fraction = static_cast<double>(covered) / inside;
  CHECK(removed == doctest::Approx(area_fraction).epsilon(0.20));
}

TEST_CASE("point sampling") {
  const auto grid = GridSpec::from_extent(64, 1.0);
  ScalarField u(grid, 0.0, kLambda);
  for (std::size_t j = 0; j < 64; ++j) {
    for (std::size_t i = 0; i < 64; ++i) u.at(i, j) = std::polar(1.0, 0.37 * i + 0.11 * j);
  }
  const auto exact = sample_points(u, {{grid.coord(10), grid.coord(20)}});
  CHECK(exact[0] == u.at(10, 20));
  const double xm = 0.5 * (grid.coord(10) + grid.coord(11));
  const auto mid = sample_points(u, {{xm, grid.coord(20)}});
  CHECK(std::abs(mid[0] - 0.5 * (u.at(10, 20) + u.at(11, 20))) < 1e-15);
  try {
    sample_points(u, {{0.0, 0.6}});
    FAIL("expected out of extent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfExtent);
  }
}

TEST_CASE("repeated runs are bit identical") {
  const auto grid = GridSpec::from_extent(128, 3.0);
  const auto u = beamlets(grid, kLambda, 3, 0.2, 0.5, 10.0, 10);
  const auto a = propagate(u, 12.0);
  const auto b = propagate(u, 12.0);
  CHECK(std::equal(a.samples().begin(), a.samples().end(), b.samples().begin()));
}

}
