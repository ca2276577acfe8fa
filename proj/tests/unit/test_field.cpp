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

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "oamheal/error.hpp"
#include "oamheal/field.hpp"
#include "support.hpp"

using namespace oamheal;

TEST_SUITE("field") {

TEST_CASE("grid spec") {
  const GridSpec g{1024, 12.0 / 1024};
  CHECK(g.extent_m() == doctest::Approx(12.0));
  CHECK(g.coord(512) == 0.0);
  CHECK(g.coord(0) == doctest::Approx(-6.0));
  CHECK_NOTHROW(g.validate());
  CHECK_THROWS_AS((GridSpec{100, 0.1}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{32, 0.1}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{64, 0.0}.validate()), Error);
}

TEST_CASE("power and geometry") {
  ScalarField u(GridSpec{64, 0.5}, 3.0, 0.01);
  u.at(1, 2) = {3.0, 4.0};
  CHECK(u.power() == doctest::Approx(25.0 * 0.25));
  u.scale({0.0, 2.0});
  CHECK(u.at(1, 2) == cplx{-8.0, 6.0});
  ScalarField v(GridSpec{64, 0.5}, 3.0, 0.01);
  CHECK(u.same_geometry(v));
  v.set_z(3.5);
  CHECK_FALSE(u.same_geometry(v));
}

TEST_CASE("binary snapshot round trip") {
  test::Gen g(4);
  ScalarField u(GridSpec{64, 0.02}, 12.5, 0.0107);
  for (auto& v : u.samples()) v = g.complex_normal();
  const auto path = std::filesystem::temp_directory_path() / "oamheal_field_test.oamf";
  write_field_binary(u, path);
  CHECK(std::filesystem::file_size(path) == 8 + 8 + 32 + 64 * 64 * 8);
  const auto back = read_field_binary(path);
  CHECK(back.same_geometry(u));
  for (std::size_t n = 0; n < u.samples().size(); ++n) {
    CHECK(std::abs(back.samples()[n] - u.samples()[n]) <= 1e-6 * (1.0 + std::abs(u.samples()[n])));
  }
  {
    std::ofstream bad(path, std::ios::binary);
    bad << "NOTAFIELD";
  }
  CHECK_THROWS_AS(read_field_binary(path), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_field_binary(path), Error);
}

TEST_CASE("csv export") {
  ScalarField u(GridSpec{64, 0.02}, 0.0, 0.0107);
  u.at(0, 0) = {0.0, 2.0};
  const auto path = std::filesystem::temp_directory_path() / "oamheal_field_test.csv";
  write_field_csv(u, path, 8);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "i,j,x_m,y_m,magnitude,phase_rad");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 64);
  std::filesystem::remove(path);
}

}
