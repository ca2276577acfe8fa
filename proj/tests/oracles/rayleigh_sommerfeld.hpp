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

// Brute-force Rayleigh–Sommerfeld (first kind) diffraction sum, O(n^4).
// Meant for grids of 64² or smaller.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace oamheal::test {

/// Output on the same grid as the input, plane z + dz. Samples are row-major
/// in (j, i) with x_i = (i - n/2)·dx.
inline std::vector<std::complex<double>> rayleigh_sommerfeld(
    const std::vector<std::complex<double>>& input, std::size_t n, double dx,
    double wavelength, double dz) {
  const double k = 2.0 * 3.14159265358979323846 / wavelength;
  const double area = dx * dx;
  const auto side = static_cast<long>(n);
  // The kernel only depends on the index offset, so tabulate it once.
  const long span = 2 * side - 1;
  std::vector<std::complex<double>> kernel(static_cast<std::size_t>(span * span));
  for (long dj = -(side - 1); dj < side; ++dj) {
    for (long di = -(side - 1); di < side; ++di) {
      const double x = static_cast<double>(di) * dx;
      const double y = static_cast<double>(dj) * dx;
      const double r = std::sqrt(x * x + y * y + dz * dz);
      const std::complex<double> h =
          (dz / (2.0 * 3.14159265358979323846 * r * r)) *
          std::complex<double>(1.0 / r, -k) * std::polar(1.0, k * r);
      kernel[static_cast<std::size_t>((dj + side - 1) * span + (di + side - 1))] = h * area;
    }
  }
  std::vector<std::complex<double>> out(n * n);
  for (long j = 0; j < side; ++j) {
    for (long i = 0; i < side; ++i) {
      std::complex<double> acc{0.0, 0.0};
      for (long q = 0; q < side; ++q) {
        const auto* krow = &kernel[static_cast<std::size_t>((j - q + side - 1) * span + side - 1 + i)];
        const auto* in = &input[static_cast<std::size_t>(q * side)];
        for (long p = 0; p < side; ++p) acc += krow[-p] * in[p];
      }
      out[static_cast<std::size_t>(j * side + i)] = acc;
    }
  }
  return out;
}

}  // namespace oamheal::test
