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

#include <filesystem>
#include <string>
#include <vector>

#include "oamheal/config.hpp"
#include "oamheal/experiment.hpp"

namespace oamheal::harness {

inline constexpr const char* kVersion = "0.1.0";

/// Link plan: derived geometry next to the published table.
std::string plan_json(const ExperimentConfig& config);

/// Serialized experiment. No timestamps or host data, so identical inputs give
/// identical bytes.
std::string experiment_json(const ExperimentReport& report);
std::string scenarios_json(const ExperimentConfig& config,
                           const std::vector<ScenarioResult>& results);

/// mode,z_m,similarity,mode_purity
std::string healing_csv(const std::vector<ScenarioResult>& results);
/// lag followed by one magnitude column per beam, scenario and antenna.
std::string correlations_csv(const std::vector<ScenarioResult>& results);

/// Writes text to dir/name, creating dir.
void write_text(const std::filesystem::path& dir, const std::string& name,
                const std::string& text);
/// Field snapshots as dir/fields/<label>.oamf.
void write_fields(const std::filesystem::path& dir, const std::vector<ScenarioResult>& results);

}  // namespace oamheal::harness
