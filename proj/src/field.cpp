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

#include "oamheal/field.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "oamheal/error.hpp"

namespace oamheal {

static_assert(std::endian::native == std::endian::little,
              "snapshot IO assumes a little-endian host");

void GridSpec::validate() const {
  if (side < 64 || !std::has_single_bit(side)) {
    fail(ErrorCode::InvalidArgument,
         "grid side must be a power of two >= 64, got " + std::to_string(side));
  }
  if (!(spacing_m > 0.0) || !std::isfinite(spacing_m)) {
    fail(ErrorCode::InvalidArgument, "grid spacing must be positive");
  }
}

ScalarField::ScalarField(GridSpec grid, double z_m, double wavelength_m)
    : grid_(grid), z_m_(z_m), wavelength_m_(wavelength_m) {
  grid_.validate();
  if (!(wavelength_m > 0.0)) {
    fail(ErrorCode::InvalidArgument, "wavelength must be positive");
  }
  samples_.assign(grid_.side * grid_.side, cplx{0.0, 0.0});
}

double ScalarField::power() const {
  double sum = 0.0;
  for (const auto& v : samples_) sum += std::norm(v);
  return sum * grid_.spacing_m * grid_.spacing_m;
}

void ScalarField::scale(cplx factor) {
  for (auto& v : samples_) v *= factor;
}

bool ScalarField::same_geometry(const ScalarField& other) const {
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)) ||
           a == b;
  };
  return grid_.side == other.grid_.side &&
         close(grid_.spacing_m, other.grid_.spacing_m) &&
         close(z_m_, other.z_m_) && close(wavelength_m_, other.wavelength_m_);
}

namespace {

constexpr char kMagic[8] = {'O', 'A', 'M', 'F', 'L', 'D', '0', '1'};

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void write_field_binary(const ScalarField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out.write(kMagic, sizeof(kMagic));
  const auto n = static_cast<std::uint32_t>(field.side());
  put(out, n);
  put(out, n);
  put(out, field.spacing());
  put(out, field.spacing());
  put(out, field.z());
  put(out, field.wavelength());
  std::vector<float> row(2 * field.side());
  for (std::size_t j = 0; j < field.side(); ++j) {
    for (std::size_t i = 0; i < field.side(); ++i) {
      row[2 * i] = static_cast<float>(field.at(i, j).real());
      row[2 * i + 1] = static_cast<float>(field.at(i, j).imag());
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

ScalarField read_field_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    fail(ErrorCode::Io, path.string() + " is not a field snapshot");
  }
  const auto nx = get<std::uint32_t>(in);
  const auto ny = get<std::uint32_t>(in);
  const auto dx = get<double>(in);
  const auto dy = get<double>(in);
  const auto z = get<double>(in);
  const auto wavelength = get<double>(in);
  if (!in || nx != ny || dx != dy) {
    fail(ErrorCode::Io, path.string() + ": only square grids are supported");
  }
  ScalarField field(GridSpec{nx, dx}, z, wavelength);
  std::vector<float> row(2 * static_cast<std::size_t>(nx));
  for (std::size_t j = 0; j < ny; ++j) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    for (std::size_t i = 0; i < nx; ++i) {
      field.at(i, j) = cplx{row[2 * i], row[2 * i + 1]};
    }
  }
  if (!in) fail(ErrorCode::Io, path.string() + ": truncated sample data");
  return field;
}

void write_field_csv(const ScalarField& field, const std::filesystem::path& path,
                     std::size_t stride) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  if (stride == 0) stride = 1;
  out << "i,j,x_m,y_m,magnitude,phase_rad\n";
  out.precision(9);
  const auto& g = field.grid();
  for (std::size_t j = 0; j < g.side; j += stride) {
    for (std::size_t i = 0; i < g.side; i += stride) {
      const auto v = field.at(i, j);
      out << i << ',' << j << ',' << g.coord(i) << ',' << g.coord(j) << ','
          << std::abs(v) << ',' << std::arg(v) << '\n';
    }
  }
}

}  // namespace oamheal
