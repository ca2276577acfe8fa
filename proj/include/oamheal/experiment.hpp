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

#include <optional>
#include <string>
#include <vector>

#include "oamheal/beam_synthesis.hpp"
#include "oamheal/config.hpp"
#include "oamheal/link_design.hpp"
#include "oamheal/mode_analysis.hpp"
#include "oamheal/propagation.hpp"
#include "oamheal/rx_chain.hpp"
#include "oamheal/wavevector.hpp"

namespace oamheal::harness {

/// One transmitted beam, optionally blocked, observed by a receiver line.
struct Scenario {
  std::string name;
  beam::SourceRing source_ring;
  beam::SourceOptions source_options;
  link::LinkDerived link;
  double link_distance_m = 50.0;
  std::optional<propagation::ObstructionMask> obstruction;
  std::vector<propagation::Point> rx_positions;
  GridSpec grid;
  propagation::PropagationOptions propagation;
  std::vector<double> z_samples;  // healing planes; the last is the receiver plane
  double annulus_inner = 0.5;
  double annulus_outer = 1.5;
  bool exact_peak = false;
  std::size_t pilot_symbols = 4096;
  std::uint64_t pilot_seed = 1;
  rx::RxOptions rx;
  bool equalize_clear_power = true;
  bool keep_fields = false;

  OamMode mode() const { return source_ring.mode; }
  /// Cone radius R(z) used for the healing annulus and purity ring.
  double ring_radius(double z_m) const;
  void validate() const;
};

struct FieldSnapshot {
  std::string label;
  ScalarField field;
};

struct ScenarioResult {
  std::string name;
  OamMode mode{2};
  double tx_radius_m = 0.0;
  double ring_radius_at_rx_m = 0.0;
  modes::HealingCurve curve;
  double clear_mode_purity = 0.0;  // at the receiver plane
  // Field samples at the receivers scaled by equalization_gain.
  rx::ChannelSnapshot clear_channel;
  std::optional<rx::ChannelSnapshot> obstructed_channel;
  double equalization_gain = 1.0;
  rx::MetricsReport clear_metrics;
  std::optional<rx::MetricsReport> obstructed_metrics;
  std::vector<FieldSnapshot> fields;  // only with keep_fields
};

/// synthesize → mask → propagate → sample → receive. Errors keep their code
/// and gain a stage label in the message.
ScenarioResult run_scenario(const Scenario& scenario);

/// Receiver line at z = L from the config.
std::vector<propagation::Point> receiver_positions(const ExperimentConfig& config);

std::vector<Scenario> build_scenarios(const ExperimentConfig& config);

/// Deltas averaged over seeds first_seed .. first_seed+count-1, the same seed
/// driving the clear and obstructed runs.
rx::MetricsDelta seed_averaged_delta(const rx::PilotSignal& pilot,
                                     const rx::ChannelSnapshot& clear,
                                     const rx::ChannelSnapshot& obstructed, double snr_db,
                                     std::uint64_t first_seed, int count, int max_lag = 32);

struct BeamPrediction {
  OamMode mode{2};
  double tx_radius_m = 0.0;
  double beam_radius_at_rx_m = 0.0;
  double guide_wavelength_m = 0.0;
  wavevector::WaveVectorTriple wavevectors;
};

struct PairComparison {
  OamMode first{2};
  OamMode second{4};
  double receiver_radius_m = 0.0;
  wavevector::Healing predicted = wavevector::Healing::Tie;
  // From the noiseless power delta: the beam losing less power heals more.
  std::optional<wavevector::Healing> simulated_power;
  // From field similarity at the receiver plane.
  std::optional<wavevector::Healing> simulated_similarity;
};

struct BeamOutcome {
  ScenarioResult scenario;
  rx::MetricsDelta noiseless;
  rx::MetricsDelta noisy_mean;
  std::vector<rx::MetricsDelta> per_seed;
};

struct ExperimentReport {
  ExperimentConfig config;
  link::TableComparison link_table;
  std::vector<BeamOutcome> beams;
  std::vector<BeamPrediction> predictions;
  std::vector<PairComparison> pairs;  // consecutive beams
};

/// Runs every configured beam clear and obstructed, equalizes the clear-LOS
/// power per beam, and aggregates deltas and predictions. Scenarios run
/// concurrently; assembly follows the config order.
ExperimentReport run_experiment(const ExperimentConfig& config, bool keep_fields = false);

std::string to_string(wavevector::Healing h);

}  // namespace oamheal::harness
