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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oamheal/beam_synthesis.hpp"
#include "oamheal/link_design.hpp"
#include "oamheal/propagation.hpp"

namespace oamheal::harness {

struct BeamConfig {
  int mode = 2;
  // Absent: matched to the reference ring so the first maxima coincide.
  std::optional<double> radius_m;
};

struct GridConfig {
  std::size_t side = 1024;
  double extent_m = 12.0;
  int padding = 2;
  double max_step_m = 10.0;
  double max_truncated_fraction = 1e-6;
};

struct SourceConfig {
  beam::SourceModel model = beam::SourceModel::PointSplat;
  int num_elements = 238;
  double angular_aperture_deg = 5.0;
  double rolloff_fraction = 0.2;
  int reference_mode = 2;
  double reference_radius_m = 0.149;
};

struct ReceiverConfig {
  int count = 4;
  double spacing_m = 0.14;
  // Line sits below the axis at y = -L·tan(offset).
  double offset_angle_deg = 1.0;
  double center_x_m = 0.0;
  // Explicit positions at z = L override the line when non-empty.
  std::vector<propagation::Point> positions;
};

struct RxChainConfig {
  double snr_db = 20.0;
  std::size_t pilot_symbols = 4096;
  std::uint64_t pilot_seed = 1;
  std::uint64_t first_noise_seed = 1;
  int noise_seed_count = 20;
  int max_lag = 32;
  bool equalize_clear_power = true;
};

struct HealingConfig {
  std::vector<double> z_m{11.0, 12.0, 14.0, 17.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0};
  double annulus_inner = 0.5;
  double annulus_outer = 1.5;
  // Use the exact first Bessel maximum instead of |ℓ|+1 for R(z).
  bool exact_peak = false;
};

/// Everything an experiment run depends on. Defaults reproduce the shipped
/// configs/default.json.
struct ExperimentConfig {
  std::string name = "default";
  link::LinkBudget link;
  double design_beam_radius_m = 0.87;
  double wavelength_override_m = 0.0;  // <= 0: c / rf_frequency
  GridConfig grid;
  SourceConfig source;
  std::vector<BeamConfig> beams{{2, 0.149}, {4, 0.218}};
  std::optional<propagation::ObstructionMask> obstruction = default_obstruction();
  ReceiverConfig receivers;
  RxChainConfig rx;
  HealingConfig healing;
  int max_concurrency = 0;  // 0: hardware concurrency

  static propagation::ObstructionMask default_obstruction();
  double wavelength_m() const;
  /// Throws ErrorCode::Config naming the offending field.
  void validate() const;
};

/// Parses JSON text. Missing keys keep their defaults; unknown keys, type
/// mismatches and malformed JSON raise ErrorCode::Config with the field path
/// or line and column.
ExperimentConfig parse_config(std::string_view text, std::string_view origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON text with every field written out.
std::string dump_config(const ExperimentConfig& config);

}  // namespace oamheal::harness
