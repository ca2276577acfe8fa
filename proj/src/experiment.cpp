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

#include "oamheal/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "oamheal/error.hpp"
#include "oamheal/units.hpp"

namespace oamheal::harness {

namespace {

template <typename Fn>
auto stage(const char* label, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string("stage '") + label + "': " + e.what());
  }
}

rx::ChannelSnapshot snapshot(std::vector<cplx> h, rx::Scenario label, OamMode mode) {
  rx::ChannelSnapshot s;
  s.h = std::move(h);
  s.label = label;
  s.mode = mode;
  return s;
}

wavevector::Healing compare_larger(double first, double second) {
  if (first > second) return wavevector::Healing::FirstHealsMore;
  if (second > first) return wavevector::Healing::SecondHealsMore;
  return wavevector::Healing::Tie;
}

}  // namespace

double Scenario::ring_radius(double z_m) const {
  const double k = kTwoPi / source_options.wavelength_m;
  return wavevector::beam_radius_at(z_m, mode(), source_ring.radius_m, k, exact_peak);
}

void Scenario::validate() const {
  source_ring.validate();
  grid.validate();
  if (!(source_options.wavelength_m > 0.0)) {
    fail(ErrorCode::InvalidArgument, "scenario: wavelength must be positive");
  }
  if (rx_positions.empty()) fail(ErrorCode::InvalidArgument, "scenario: no receivers");
  if (z_samples.empty() || std::abs(z_samples.back() - link_distance_m) > 1e-9) {
    fail(ErrorCode::InvalidArgument, "scenario: last healing plane must be the receiver plane");
  }
  if (obstruction) {
    obstruction->validate();
    if (!(obstruction->z_m < link_distance_m)) {
      fail(ErrorCode::InvalidArgument, "scenario: obstruction must lie before the receivers");
    }
  }
}

ScenarioResult run_scenario(const Scenario& s) {
  stage("validate", [&] { s.validate(); });
  const OamMode mode = s.mode();

  ScenarioResult out;
  out.name = s.name;
  out.mode = mode;
  out.tx_radius_m = s.source_ring.radius_m;
  out.ring_radius_at_rx_m = s.ring_radius(s.link_distance_m);

  const ScalarField source = stage("synthesize", [&] {
    return beam::synthesize_source_field(s.source_ring, s.grid, s.source_options);
  });

  modes::HealingSetup setup;
  setup.source = &source;
  setup.mode = mode.order();
  setup.obstruction = s.obstruction;
  setup.ring_radius = [&s](double z) { return s.ring_radius(z); };
  setup.annulus_inner = s.annulus_inner;
  setup.annulus_outer = s.annulus_outer;
  setup.propagation = s.propagation;
  auto trace = stage("propagate", [&] { return modes::trace_healing(setup, s.z_samples); });
  out.curve = trace.curve;
  const ScalarField& clear = *trace.clear_final;

  out.clear_mode_purity = stage("mode purity", [&] {
    return modes::azimuthal_spectrum(clear, out.ring_radius_at_rx_m, mode.magnitude() + 8)
        .power(mode.order());
  });

  stage("sample", [&] {
    out.clear_channel = snapshot(propagation::sample_points(clear, s.rx_positions),
                                 rx::Scenario::Clear, mode);
    if (trace.obstructed_final) {
      out.obstructed_channel =
          snapshot(propagation::sample_points(*trace.obstructed_final, s.rx_positions),
                   rx::Scenario::Obstructed, mode);
    }
  });

  if (s.equalize_clear_power) {
    double mean = 0.0;
    for (const auto& h : out.clear_channel.h) mean += std::norm(h);
    mean /= static_cast<double>(out.clear_channel.h.size());
    if (mean > 0.0) out.equalization_gain = 1.0 / std::sqrt(mean);
  }
  for (auto& h : out.clear_channel.h) h *= out.equalization_gain;
  if (out.obstructed_channel) {
    for (auto& h : out.obstructed_channel->h) h *= out.equalization_gain;
  }

  stage("rx chain", [&] {
    const auto pilot = rx::generate_pilot(s.pilot_seed, s.pilot_symbols);
    out.clear_metrics = rx::run_rx_chain(pilot, out.clear_channel, s.rx);
    if (out.obstructed_channel) {
      out.obstructed_metrics = rx::run_rx_chain(pilot, *out.obstructed_channel, s.rx);
    }
  });

  if (s.keep_fields) {
    const std::string tag = "l" + std::to_string(mode.order());
    out.fields.push_back({tag + "_source", source});
    if (s.obstruction) {
      auto at_mask = stage("snapshot", [&] {
        return propagation::apply_mask(
            propagation::propagate(source, s.obstruction->z_m, s.propagation), *s.obstruction);
      });
      out.fields.push_back({tag + "_masked", std::move(at_mask)});
    }
    out.fields.push_back({tag + "_clear_rx", std::move(*trace.clear_final)});
    if (trace.obstructed_final) {
      out.fields.push_back({tag + "_obstructed_rx", std::move(*trace.obstructed_final)});
    }
  }
  return out;
}

std::vector<propagation::Point> receiver_positions(const ExperimentConfig& c) {
  if (!c.receivers.positions.empty()) return c.receivers.positions;
  const double y = -c.link.link_distance_m * std::tan(deg_to_rad(c.receivers.offset_angle_deg));
  std::vector<propagation::Point> pts;
  const double mid = 0.5 * static_cast<double>(c.receivers.count - 1);
  for (int i = 0; i < c.receivers.count; ++i) {
    pts.push_back({c.receivers.center_x_m + (static_cast<double>(i) - mid) * c.receivers.spacing_m, y});
  }
  return pts;
}

std::vector<Scenario> build_scenarios(const ExperimentConfig& c) {
  c.validate();
  const double wavelength = c.wavelength_m();
  const auto link = link::derive_link(c.link, c.design_beam_radius_m, c.wavelength_override_m);
  const OamMode reference{c.source.reference_mode};
  std::vector<Scenario> out;
  for (const auto& b : c.beams) {
    Scenario s;
    const OamMode mode{b.mode};
    s.name = "l" + std::to_string(b.mode);
    s.source_ring.mode = mode;
    s.source_ring.num_elements = c.source.num_elements;
    s.source_ring.radius_m =
        b.radius_m ? *b.radius_m
                   : beam::matched_radius(mode, reference, c.source.reference_radius_m);
    s.source_options.model = c.source.model;
    s.source_options.wavelength_m = wavelength;
    s.source_options.angular_aperture_deg = c.source.angular_aperture_deg;
    s.source_options.rolloff_fraction = c.source.rolloff_fraction;
    s.link = link;
    s.link_distance_m = c.link.link_distance_m;
    s.obstruction = c.obstruction;
    s.rx_positions = receiver_positions(c);
    s.grid = GridSpec::from_extent(c.grid.side, c.grid.extent_m);
    s.propagation.padding = c.grid.padding;
    s.propagation.max_step_m = c.grid.max_step_m;
    s.propagation.max_truncated_fraction = c.grid.max_truncated_fraction;
    s.z_samples = c.healing.z_m;
    s.annulus_inner = c.healing.annulus_inner;
    s.annulus_outer = c.healing.annulus_outer;
    s.exact_peak = c.healing.exact_peak;
    s.pilot_symbols = c.rx.pilot_symbols;
    s.pilot_seed = c.rx.pilot_seed;
    s.rx.snr_db = c.rx.snr_db;
    s.rx.noise_seed = c.rx.first_noise_seed;
    s.rx.max_lag = c.rx.max_lag;
    s.equalize_clear_power = c.rx.equalize_clear_power;
    out.push_back(std::move(s));
  }
  return out;
}

rx::MetricsDelta seed_averaged_delta(const rx::PilotSignal& pilot,
                                     const rx::ChannelSnapshot& clear,
                                     const rx::ChannelSnapshot& obstructed, double snr_db,
                                     std::uint64_t first_seed, int count, int max_lag) {
  std::vector<rx::MetricsDelta> deltas;
  for (int i = 0; i < count; ++i) {
    const rx::RxOptions opts{snr_db, first_seed + static_cast<std::uint64_t>(i), max_lag};
    deltas.push_back(rx::compute_metrics(rx::run_rx_chain(pilot, clear, opts),
                                         rx::run_rx_chain(pilot, obstructed, opts)));
  }
  return rx::average_deltas(deltas);
}

std::string to_string(wavevector::Healing h) {
  switch (h) {
    case wavevector::Healing::FirstHealsMore: return "first";
    case wavevector::Healing::SecondHealsMore: return "second";
    case wavevector::Healing::Tie: return "tie";
  }
  return "tie";
}

ExperimentReport run_experiment(const ExperimentConfig& config, bool keep_fields) {
  auto scenarios = build_scenarios(config);
  for (auto& s : scenarios) s.keep_fields = keep_fields;

  ExperimentReport report;
  report.config = config;
  report.link_table = link::compare_with_published(config.link, config.design_beam_radius_m,
                                                   config.wavelength_override_m);

  // Independent scenarios run on a small worker pool; each writes only its
  // own slot, so the assembled report does not depend on scheduling.
  std::vector<std::optional<ScenarioResult>> results(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  std::size_t workers = config.max_concurrency > 0
                            ? static_cast<std::size_t>(config.max_concurrency)
                            : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, scenarios.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        results[i] = run_scenario(scenarios[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const auto pilot = rx::generate_pilot(config.rx.pilot_seed, config.rx.pilot_symbols);
  const double wavelength = config.wavelength_m();
  const double receiver_radius = [&] {
    const auto pts = receiver_positions(config);
    double sum = 0.0;
    for (const auto& p : pts) sum += std::hypot(p.x, p.y);
    return sum / static_cast<double>(pts.size());
  }();

  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    BeamOutcome b;
    b.scenario = std::move(*results[i]);
    // Without an obstruction the obstructed run is the clear run.
    const auto& clear = b.scenario.clear_channel;
    const auto& blocked = b.scenario.obstructed_channel ? *b.scenario.obstructed_channel : clear;
    const rx::RxOptions noiseless{std::numeric_limits<double>::infinity(), 0, config.rx.max_lag};
    b.noiseless = rx::compute_metrics(rx::run_rx_chain(pilot, clear, noiseless),
                                      rx::run_rx_chain(pilot, blocked, noiseless));
    for (int k = 0; k < config.rx.noise_seed_count; ++k) {
      const rx::RxOptions opts{config.rx.snr_db,
                               config.rx.first_noise_seed + static_cast<std::uint64_t>(k),
                               config.rx.max_lag};
      b.per_seed.push_back(rx::compute_metrics(rx::run_rx_chain(pilot, clear, opts),
                                               rx::run_rx_chain(pilot, blocked, opts)));
    }
    b.noisy_mean = rx::average_deltas(b.per_seed);

    BeamPrediction p;
    const auto& sc = scenarios[i];
    p.mode = sc.mode();
    p.tx_radius_m = sc.source_ring.radius_m;
    p.beam_radius_at_rx_m = sc.ring_radius(sc.link_distance_m);
    p.guide_wavelength_m = stage("prediction", [&] {
      return wavevector::guide_wavelength_coax(p.tx_radius_m, wavelength, p.mode);
    });
    p.wavevectors = wavevector::wavevectors_at(p.beam_radius_at_rx_m, p.guide_wavelength_m, p.mode);
    report.predictions.push_back(p);
    report.beams.push_back(std::move(b));
  }

  for (std::size_t i = 0; i + 1 < report.beams.size(); ++i) {
    const auto& a = report.beams[i];
    const auto& b = report.beams[i + 1];
    PairComparison pc;
    pc.first = a.scenario.mode;
    pc.second = b.scenario.mode;
    pc.receiver_radius_m = receiver_radius;
    pc.predicted = wavevector::healing_prediction(pc.first, pc.second, receiver_radius);
    if (config.obstruction) {
      pc.simulated_power = compare_larger(a.noiseless.avg_power_db, b.noiseless.avg_power_db);
      pc.simulated_similarity =
          compare_larger(a.scenario.curve.similarity.back(), b.scenario.curve.similarity.back());
    }
    report.pairs.push_back(pc);
  }
  return report;
}

}  // namespace oamheal::harness
