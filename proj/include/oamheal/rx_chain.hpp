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
#include <string>
#include <vector>

#include "oamheal/beam_synthesis.hpp"
#include "oamheal/field.hpp"

namespace oamheal::rx {

using Stream = std::vector<cplx>;

inline constexpr double kSymbolRate = 30.72e6;
inline constexpr double kSampleRate = 122.88e6;
inline constexpr double kMaxReportedSnrDb = 200.0;

/// Pseudo-BPSK pilot over {1+j, −1−j}, held for sample_rate/symbol_rate
/// samples per symbol.
struct PilotSignal {
  std::vector<cplx> symbols;
  Stream samples;
  double symbol_rate = kSymbolRate;
  double sample_rate = kSampleRate;
  std::uint64_t seed = 0;

  std::size_t oversampling() const { return samples.size() / symbols.size(); }
  double mean_power() const;
};

/// Reproducible pilot; num_symbols >= 1024.
PilotSignal generate_pilot(std::uint64_t seed, std::size_t num_symbols,
                           double symbol_rate = kSymbolRate,
                           double sample_rate = kSampleRate);

enum class Scenario { Clear, Obstructed };
std::string to_string(Scenario s);

/// Flat per-antenna complex gains.
struct ChannelSnapshot {
  std::vector<cplx> h;
  Scenario label = Scenario::Clear;
  OamMode mode{2};
};

/// stream_i = h_i·pilot + w_i with circular Gaussian w_i whose variance gives
/// snr_db per antenna at |h_i| = 1. An infinite snr_db disables noise.
std::vector<Stream> apply_channel(const PilotSignal& pilot, const ChannelSnapshot& chan,
                                  double snr_db, std::uint64_t noise_seed);

struct CorrelationTrace {
  std::vector<int> lags;
  std::vector<double> magnitude;  // |c(lag)| / (|stream|·|pilot|)
  std::vector<double> gain_magnitude;  // |c(lag)| / |pilot|²
  int peak_lag = 0;
  double peak = 0.0;
  cplx gain{0.0, 0.0};  // c(peak_lag) / |pilot|²
};

/// Cross-correlation of a stream with the pilot for lags in [-max_lag, max_lag].
CorrelationTrace correlate_pilot(const Stream& stream, const PilotSignal& pilot,
                                 int max_lag = 32);

/// Least squares h_i = <stream_i, pilot> / |pilot|² over time-aligned streams.
ChannelSnapshot estimate_channel(const std::vector<Stream>& streams,
                                 const PilotSignal& pilot);

/// y = Σ conj(h_i)·stream_i / Σ|h_i|².
Stream mrc_combine(const std::vector<Stream>& streams, const ChannelSnapshot& chan);

/// Symbol decisions from the per-symbol mean of a combined stream.
std::vector<cplx> decide_symbols(const Stream& combined, std::size_t oversampling);

/// RMS error against the decided constellation points over all samples,
/// divided by the RMS reference magnitude, in percent.
double evm_percent(const Stream& combined, std::size_t oversampling);

/// Signal-to-residual ratio of a stream after removing its LS pilot fit.
double measured_snr_db(const Stream& stream, const PilotSignal& pilot);

/// Wraps an angle in degrees to (−180, 180].
double wrap_degrees(double deg);

struct MetricsReport {
  std::vector<double> rx_power_db;  // |h_i|²·pilot power
  double avg_power_db = 0.0;        // 10·log10 of the mean linear power
  std::vector<double> snr_db;
  double avg_snr_db = 0.0;
  double combined_snr_db = 0.0;
  double combined_evm_pct = 0.0;
  std::vector<double> channel_phases_deg;
  std::vector<CorrelationTrace> correlation;
  ChannelSnapshot estimate;
  std::uint64_t noise_seed = 0;
};

struct RxOptions {
  double snr_db = 20.0;
  std::uint64_t noise_seed = 1;
  int max_lag = 32;
};

/// Full receive processing for one channel: apply, correlate, estimate,
/// combine and measure.
MetricsReport run_rx_chain(const PilotSignal& pilot, const ChannelSnapshot& chan,
                           const RxOptions& options);

struct MetricsDelta {
  std::vector<double> power_db;
  double avg_power_db = 0.0;
  double avg_snr_db = 0.0;
  double combined_evm_pct = 0.0;  // percentage points
  std::vector<double> phases_deg;
};

/// Obstructed minus clear, phases wrapped.
MetricsDelta compute_metrics(const MetricsReport& clear, const MetricsReport& obstructed);

/// Element-wise mean of several deltas (phases are averaged as unit phasors).
MetricsDelta average_deltas(const std::vector<MetricsDelta>& deltas);

}  // namespace oamheal::rx
