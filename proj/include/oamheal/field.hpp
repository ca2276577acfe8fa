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
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "oamheal/aligned.hpp"

namespace oamheal {

using cplx = std::complex<double>;

/// Square sampling grid. Sample (i, j) sits at x = (i - side/2)·spacing,
/// y = (j - side/2)·spacing, stored row-major (j is the row).
struct GridSpec {
  std::size_t side = 1024;
  double spacing_m = 12.0 / 1024.0;

  double extent_m() const { return static_cast<double>(side) * spacing_m; }
  double coord(std::size_t index) const {
    return (static_cast<double>(index) - static_cast<double>(side / 2)) *
           spacing_m;
  }
  /// Throws ErrorCode::InvalidArgument unless side is a power of two >= 64 and
  /// spacing is positive.
  void validate() const;

  static GridSpec from_extent(std::size_t side, double extent_m) {
    return GridSpec{side, extent_m / static_cast<double>(side)};
  }
};

/// Complex transverse field sampled at one z-plane.
class ScalarField {
 public:
  ScalarField(GridSpec grid, double z_m, double wavelength_m);

  const GridSpec& grid() const { return grid_; }
  std::size_t side() const { return grid_.side; }
  double spacing() const { return grid_.spacing_m; }
  double extent() const { return grid_.extent_m(); }
  double z() const { return z_m_; }
  double wavelength() const { return wavelength_m_; }
  void set_z(double z_m) { z_m_ = z_m; }

  cplx& at(std::size_t i, std::size_t j) { return samples_[j * grid_.side + i]; }
  const cplx& at(std::size_t i, std::size_t j) const {
    return samples_[j * grid_.side + i];
  }
  std::span<cplx> samples() { return samples_; }
  std::span<const cplx> samples() const { return samples_; }

  /// Σ|u|²·spacing².
  double power() const;
  void scale(cplx factor);

  /// True when grid, z and wavelength agree (z and λ to 1e-12 relative).
  bool same_geometry(const ScalarField& other) const;

 private:
  GridSpec grid_;
  double z_m_;
  double wavelength_m_;
  aligned_vector<cplx> samples_;
};

// Snapshot file: little-endian header
//   char[8]  magic "OAMFLD01"
//   uint32   nx, ny
//   float64  spacing_x, spacing_y, z, wavelength
// followed by nx*ny row-major complex64 samples (float32 re, float32 im).
void write_field_binary(const ScalarField& field, const std::filesystem::path& path);
ScalarField read_field_binary(const std::filesystem::path& path);

/// CSV with header "i,j,x_m,y_m,magnitude,phase_rad". stride > 1 decimates.
void write_field_csv(const ScalarField& field, const std::filesystem::path& path,
                     std::size_t stride = 1);

}  // namespace oamheal
