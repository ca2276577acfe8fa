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

#include "oamheal/rx_chain.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "oamheal/error.hpp"
#include "oamheal/units.hpp"

namespace oamheal::rx {

namespace {

const cplx kPlus{1.0, 1.0};
const cplx kMinus{-1.0, -1.0};

double to_db(double linear) {
  if (!(linear > 0.0)) return -kMaxReportedSnrDb;
  return std::min(kMaxReportedSnrDb, 10.0 * std::log10(linear));
}

double mean_linear_db(const std::vector<double>& db) {
  double sum = 0.0;
  for (const double v : db) sum += std::pow(10.0, v / 10.0);
  return to_db(sum / static_cast<double>(db.size()));
}

void require_aligned(const std::vector<Stream>& streams, const PilotSignal& pilot) {
  if (streams.empty()) fail(ErrorCode::Length, "no receive streams");
  for (const auto& s : streams) {
    if (s.size() < pilot.samples.size()) {
      fail(ErrorCode::Length, "stream shorter than the pilot");
    }
  }
}

}  // namespace

double PilotSignal::mean_power() const {
  double sum = 0.0;
  for (const auto& v : samples) sum += std::norm(v);
  return samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
}

PilotSignal generate_pilot(std::uint64_t seed, std::size_t num_symbols,
                           double symbol_rate, double sample_rate) {
  if (num_symbols < 1024) {
    fail(ErrorCode::InvalidArgument, "pilot needs at least 1024 symbols");
  }
  const double ratio = sample_rate / symbol_rate;
  const auto hold = static_cast<std::size_t>(std::llround(ratio));
  if (hold < 1 || std::abs(ratio - static_cast<double>(hold)) > 1e-12 * ratio) {
    fail(ErrorCode::InvalidArgument, "sample rate must be an integer multiple of the symbol rate");
  }
  PilotSignal p;
  p.symbol_rate = symbol_rate;
  p.sample_rate = sample_rate;
  p.seed = seed;
  p.symbols.reserve(num_symbols);
  p.samples.reserve(num_symbols * hold);
  // mt19937_64 output is fully specified by the standard, unlike the
  // distributions, so the sequence is portable.
  std::mt19937_64 engine(seed);
  for (std::size_t s = 0; s < num_symbols; ++s) {
    const cplx sym = (engine() >> 63) ? kPlus : kMinus;
    p.symbols.push_back(sym);
    for (std::size_t k = 0; k < hold; ++k) p.samples.push_back(sym);
  }
  return p;
}

std::string to_string(Scenario s) {
  return s == Scenario::Clear ? "clear" : "obstructed";
}

std::vector<Stream> apply_channel(const PilotSignal& pilot, const ChannelSnapshot& chan,
                                  double snr_db, std::uint64_t noise_seed) {
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    fail(ErrorCode::InvalidArgument, "apply_channel: SNR must be a number");
  }
  const bool noisy = std::isfinite(snr_db);
  const double sigma =
      noisy ? std::sqrt(pilot.mean_power() / std::pow(10.0, snr_db / 10.0) / 2.0) : 0.0;
  std::mt19937_64 engine(noise_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Stream> streams(chan.h.size());
  for (std::size_t a = 0; a < chan.h.size(); ++a) {
    auto& s = streams[a];
    s.resize(pilot.samples.size());
    for (std::size_t n = 0; n < s.size(); ++n) {
      s[n] = chan.h[a] * pilot.samples[n];
      if (noisy) {
        const double re = gauss(engine);
        const double im = gauss(engine);
        s[n] += cplx{sigma * re, sigma * im};
      }
    }
  }
  return streams;
}

CorrelationTrace correlate_pilot(const Stream& stream, const PilotSignal& pilot,
                                 int max_lag) {
  const auto& p = pilot.samples;
  if (stream.size() < p.size()) {
    fail(ErrorCode::Length, "correlate_pilot: stream shorter than the pilot");
  }
  if (max_lag < 0) fail(ErrorCode::InvalidArgument, "correlate_pilot: max_lag < 0");
  double pilot_energy = 0.0;
  for (const auto& v : p) pilot_energy += std::norm(v);
  double stream_energy = 0.0;
  for (const auto& v : stream) stream_energy += std::norm(v);
  if (pilot_energy == 0.0) fail(ErrorCode::DegeneratePilot, "pilot has zero energy");
  const double norm = std::sqrt(pilot_energy * stream_energy);

  CorrelationTrace t;
  const auto ls = static_cast<long long>(stream.size());
  const auto lp = static_cast<long long>(p.size());
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    const long long first = std::max<long long>(0, -lag);
    const long long last = std::min<long long>(lp, ls - lag);
    cplx acc{0.0, 0.0};
    for (long long n = first; n < last; ++n) {
      acc += stream[static_cast<std::size_t>(n + lag)] * std::conj(p[static_cast<std::size_t>(n)]);
    }
    const double mag = norm > 0.0 ? std::abs(acc) / norm : 0.0;
    t.lags.push_back(lag);
    t.magnitude.push_back(mag);
    t.gain_magnitude.push_back(std::abs(acc) / pilot_energy);
    if (t.lags.size() == 1 || mag > t.peak) {
      t.peak = mag;
      t.peak_lag = lag;
      t.gain = acc / pilot_energy;
    }
  }
  return t;
}

ChannelSnapshot estimate_channel(const std::vector<Stream>& streams,
                                 const PilotSignal& pilot) {
  require_aligned(streams, pilot);
  const auto& p = pilot.samples;
  double energy = 0.0;
  for (const auto& v : p) energy += std::norm(v);
  if (energy == 0.0) fail(ErrorCode::DegeneratePilot, "estimate_channel: zero pilot energy");
  ChannelSnapshot out;
  out.h.reserve(streams.size());
  for (const auto& s : streams) {
    cplx acc{0.0, 0.0};
    for (std::size_t n = 0; n < p.size(); ++n) acc += s[n] * std::conj(p[n]);
    out.h.push_back(acc / energy);
  }
  return out;
}

Stream mrc_combine(const std::vector<Stream>& streams, const ChannelSnapshot& chan) {
  if (streams.size() != chan.h.size() || streams.empty()) {
    fail(ErrorCode::InvalidArgument, "mrc_combine: stream and channel counts differ");
  }
  double gain = 0.0;
  for (const auto& h : chan.h) gain += std::norm(h);
  if (gain == 0.0) fail(ErrorCode::ZeroChannel, "mrc_combine: all-zero channel");
  const std::size_t len = streams.front().size();
  Stream y(len, cplx{0.0, 0.0});
  for (std::size_t a = 0; a < streams.size(); ++a) {
    if (streams[a].size() != len) fail(ErrorCode::Length, "mrc_combine: ragged streams");
    const cplx w = std::conj(chan.h[a]) / gain;
    for (std::size_t n = 0; n < len; ++n) y[n] += w * streams[a][n];
  }
  return y;
}

std::vector<cplx> decide_symbols(const Stream& combined, std::size_t oversampling) {
  if (oversampling == 0) fail(ErrorCode::InvalidArgument, "oversampling must be >= 1");
  std::vector<cplx> out;
  out.reserve(combined.size() / oversampling);
  for (std::size_t s = 0; s + oversampling <= combined.size(); s += oversampling) {
    cplx mean{0.0, 0.0};
    for (std::size_t k = 0; k < oversampling; ++k) mean += combined[s + k];
    // Projection onto the 1+j axis separates the two points.
    out.push_back(mean.real() + mean.imag() >= 0.0 ? kPlus : kMinus);
  }
  return out;
}

double evm_percent(const Stream& combined, std::size_t oversampling) {
  const auto decisions = decide_symbols(combined, oversampling);
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t s = 0; s < decisions.size(); ++s) {
    for (std::size_t k = 0; k < oversampling; ++k) {
      err += std::norm(combined[s * oversampling + k] - decisions[s]);
      ref += std::norm(decisions[s]);
    }
  }
  return ref > 0.0 ? 100.0 * std::sqrt(err / ref) : 0.0;
}

double measured_snr_db(const Stream& stream, const PilotSignal& pilot) {
  const auto est = estimate_channel({stream}, pilot);
  const cplx g = est.h.front();
  const auto& p = pilot.samples;
  double residual = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) residual += std::norm(stream[n] - g * p[n]);
  residual /= static_cast<double>(p.size());
  const double signal = std::norm(g) * pilot.mean_power();
  if (residual == 0.0) return signal > 0.0 ? kMaxReportedSnrDb : -kMaxReportedSnrDb;
  return to_db(signal / residual);
}

double wrap_degrees(double deg) {
  return deg - 360.0 * std::ceil((deg - 180.0) / 360.0);
}

MetricsReport run_rx_chain(const PilotSignal& pilot, const ChannelSnapshot& chan,
                           const RxOptions& options) {
  bool any = false;
  for (const auto& h : chan.h) any = any || std::abs(h) > 0.0;
  if (!any) fail(ErrorCode::ZeroChannel, "rx chain: all channel gains are zero");

  const auto streams = apply_channel(pilot, chan, options.snr_db, options.noise_seed);
  MetricsReport m;
  m.noise_seed = options.noise_seed;
  for (const auto& s : streams) m.correlation.push_back(correlate_pilot(s, pilot, options.max_lag));
  m.estimate = estimate_channel(streams, pilot);
  m.estimate.label = chan.label;
  m.estimate.mode = chan.mode;

  const double pilot_power = pilot.mean_power();
  for (std::size_t a = 0; a < streams.size(); ++a) {
    m.rx_power_db.push_back(to_db(std::norm(m.estimate.h[a]) * pilot_power));
    m.snr_db.push_back(measured_snr_db(streams[a], pilot));
    m.channel_phases_deg.push_back(wrap_degrees(rad_to_deg(std::arg(m.estimate.h[a]))));
  }
  m.avg_power_db = mean_linear_db(m.rx_power_db);
  m.avg_snr_db = mean_linear_db(m.snr_db);

  const auto combined = mrc_combine(streams, m.estimate);
  m.combined_snr_db = measured_snr_db(combined, pilot);
  m.combined_evm_pct = evm_percent(combined, pilot.oversampling());
  return m;
}

MetricsDelta compute_metrics(const MetricsReport& clear, const MetricsReport& obstructed) {
  if (clear.rx_power_db.size() != obstructed.rx_power_db.size()) {
    fail(ErrorCode::InvalidArgument, "compute_metrics: antenna counts differ");
  }
  MetricsDelta d;
  for (std::size_t a = 0; a < clear.rx_power_db.size(); ++a) {
    d.power_db.push_back(obstructed.rx_power_db[a] - clear.rx_power_db[a]);
    d.phases_deg.push_back(
        wrap_degrees(obstructed.channel_phases_deg[a] - clear.channel_phases_deg[a]));
  }
  d.avg_power_db = obstructed.avg_power_db - clear.avg_power_db;
  d.avg_snr_db = obstructed.avg_snr_db - clear.avg_snr_db;
  d.combined_evm_pct = obstructed.combined_evm_pct - clear.combined_evm_pct;
  return d;
}

MetricsDelta average_deltas(const std::vector<MetricsDelta>& deltas) {
  if (deltas.empty()) fail(ErrorCode::InvalidArgument, "average_deltas: nothing to average");
  const std::size_t antennas = deltas.front().power_db.size();
  MetricsDelta out;
  out.power_db.assign(antennas, 0.0);
  std::vector<cplx> phasors(antennas, cplx{0.0, 0.0});
  for (const auto& d : deltas) {
    for (std::size_t a = 0; a < antennas; ++a) {
      out.power_db[a] += d.power_db[a];
      phasors[a] += std::polar(1.0, deg_to_rad(d.phases_deg[a]));
    }
    out.avg_power_db += d.avg_power_db;
    out.avg_snr_db += d.avg_snr_db;
    out.combined_evm_pct += d.combined_evm_pct;
  }
  const double n = static_cast<double>(deltas.size());
  for (auto& v : out.power_db) v /= n;
  out.avg_power_db /= n;
  out.avg_snr_db /= n;
  out.combined_evm_pct /= n;
  for (const auto& p : phasors) out.phases_deg.push_back(wrap_degrees(rad_to_deg(std::arg(p))));
  return out;
}

}  // namespace oamheal::rx
