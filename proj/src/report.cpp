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

#include "oamheal/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "fft.hpp"
#include "internal/config_json.hpp"
#include "oamheal/error.hpp"

namespace oamheal::harness {

using detail::Json;

namespace {

Json complex_list(const std::vector<cplx>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back({c.real(), c.imag()});
  return out;
}

Json versions() {
  return {{"oamheal", kVersion}, {"fft", oamheal::detail::fft_library_version()}};
}

Json link_json(const link::TableComparison& t) {
  const auto& c = t.computed;
  return {
      {"computed",
       {{"beam_radius_bound_m", t.computed_radius_bound_m},
        {"beam_radius_m", c.beam_radius_m},
        {"wavelength_m", c.wavelength_m},
        {"tx_radius_m", c.tx_radius_m},
        {"far_field_m", c.far_field_m},
        {"num_elements", c.num_elements}}},
      {"published",
       {{"beam_radius_bound_m", link::PublishedTable::beam_radius_bound_m},
        {"beam_radius_m", link::PublishedTable::beam_radius_m},
        {"wavelength_m", link::PublishedTable::wavelength_m},
        {"tx_radius_m", link::PublishedTable::tx_radius_m},
        {"far_field_m", link::PublishedTable::far_field_m},
        {"num_elements", link::PublishedTable::num_elements}}},
      {"discrepancy",
       {{"beam_radius_bound", t.radius_bound_discrepancy},
        {"tx_radius", t.tx_radius_discrepancy},
        {"far_field", t.far_field_discrepancy},
        {"num_elements", t.num_elements_discrepancy}}},
  };
}

Json metrics_json(const rx::MetricsReport& m) {
  return {
      {"noise_seed", m.noise_seed},
      {"rx_power_db", m.rx_power_db},
      {"avg_power_db", m.avg_power_db},
      {"snr_db", m.snr_db},
      {"avg_snr_db", m.avg_snr_db},
      {"combined_snr_db", m.combined_snr_db},
      {"combined_evm_pct", m.combined_evm_pct},
      {"channel_phases_deg", m.channel_phases_deg},
      {"estimated_channel", complex_list(m.estimate.h)},
  };
}

Json delta_json(const rx::MetricsDelta& d) {
  return {
      {"power_db", d.power_db},
      {"avg_power_db", d.avg_power_db},
      {"avg_snr_db", d.avg_snr_db},
      {"combined_evm_pct", d.combined_evm_pct},
      {"phases_deg", d.phases_deg},
  };
}

Json curve_json(const modes::HealingCurve& c) {
  return {{"z_m", c.z_m}, {"similarity", c.similarity}, {"mode_purity", c.mode_purity}};
}

Json scenario_json(const ScenarioResult& r) {
  Json j;
  j["name"] = r.name;
  j["mode"] = r.mode.order();
  j["tx_radius_m"] = r.tx_radius_m;
  j["ring_radius_at_rx_m"] = r.ring_radius_at_rx_m;
  j["clear_mode_purity"] = r.clear_mode_purity;
  j["equalization_gain"] = r.equalization_gain;
  j["clear_channel"] = complex_list(r.clear_channel.h);
  j["obstructed_channel"] =
      r.obstructed_channel ? complex_list(r.obstructed_channel->h) : Json(nullptr);
  j["clear_metrics"] = metrics_json(r.clear_metrics);
  j["obstructed_metrics"] =
      r.obstructed_metrics ? metrics_json(*r.obstructed_metrics) : Json(nullptr);
  j["healing_curve"] = curve_json(r.curve);
  return j;
}

Json receivers_json(const ExperimentConfig& c) {
  Json pts = Json::array();
  for (const auto& p : receiver_positions(c)) pts.push_back({p.x, p.y});
  return pts;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string plan_json(const ExperimentConfig& config) {
  config.link.validate();
  const auto table = link::compare_with_published(config.link, config.design_beam_radius_m,
                                                  config.wavelength_override_m);
  Json j;
  j["versions"] = versions();
  j["link_budget"] = detail::config_to_json(config)["link"];
  j["link"] = link_json(table);
  return dump(j);
}

std::string experiment_json(const ExperimentReport& report) {
  Json j;
  j["versions"] = versions();
  j["config"] = detail::config_to_json(report.config);
  j["receivers"] = receivers_json(report.config);
  j["link"] = link_json(report.link_table);

  Json predicted = Json::array();
  for (const auto& p : report.predictions) {
    predicted.push_back({
        {"mode", p.mode.order()},
        {"tx_radius_m", p.tx_radius_m},
        {"beam_radius_at_rx_m", p.beam_radius_at_rx_m},
        {"guide_wavelength_m", p.guide_wavelength_m},
        {"k", p.wavevectors.k},
        {"k_z", p.wavevectors.k_z},
        {"k_T", p.wavevectors.k_T},
    });
  }
  Json pairs = Json::array();
  for (const auto& pc : report.pairs) {
    auto name = [&](std::optional<wavevector::Healing> h) -> Json {
      if (!h) return nullptr;
      if (*h == wavevector::Healing::Tie) return "tie";
      return *h == wavevector::Healing::FirstHealsMore ? pc.first.order() : pc.second.order();
    };
    pairs.push_back({
        {"modes", {pc.first.order(), pc.second.order()}},
        {"receiver_radius_m", pc.receiver_radius_m},
        {"predicted_heals_more", name(pc.predicted)},
        {"simulated_heals_more_by_power", name(pc.simulated_power)},
        {"simulated_heals_more_by_similarity", name(pc.simulated_similarity)},
    });
  }
  j["model_prediction"] = {{"beams", predicted}, {"pairs", pairs}};

  Json beams = Json::array();
  for (const auto& b : report.beams) {
    Json e = scenario_json(b.scenario);
    e["delta_noiseless"] = delta_json(b.noiseless);
    e["delta_noisy_mean"] = delta_json(b.noisy_mean);
    Json seeds = Json::array();
    for (const auto& d : b.per_seed) {
      seeds.push_back({{"avg_snr_db", d.avg_snr_db}, {"combined_evm_pct", d.combined_evm_pct}});
    }
    e["delta_per_seed"] = seeds;
    beams.push_back(e);
  }
  j["simulated"] = beams;
  return dump(j);
}

std::string scenarios_json(const ExperimentConfig& config,
                           const std::vector<ScenarioResult>& results) {
  Json j;
  j["versions"] = versions();
  j["config"] = detail::config_to_json(config);
  j["receivers"] = receivers_json(config);
  Json list = Json::array();
  for (const auto& r : results) list.push_back(scenario_json(r));
  j["scenarios"] = list;
  return dump(j);
}

std::string healing_csv(const std::vector<ScenarioResult>& results) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "mode,z_m,similarity,mode_purity\n";
  for (const auto& r : results) {
    for (std::size_t i = 0; i < r.curve.z_m.size(); ++i) {
      out << r.mode.order() << ',' << r.curve.z_m[i] << ',' << r.curve.similarity[i] << ','
          << r.curve.mode_purity[i] << '\n';
    }
  }
  return out.str();
}

std::string correlations_csv(const std::vector<ScenarioResult>& results) {
  std::vector<std::string> names;
  std::vector<const rx::CorrelationTrace*> traces;
  auto add = [&](const std::string& prefix, const rx::MetricsReport& m) {
    for (std::size_t a = 0; a < m.correlation.size(); ++a) {
      names.push_back(prefix + "_rx" + std::to_string(a + 1));
      traces.push_back(&m.correlation[a]);
    }
  };
  for (const auto& r : results) {
    add(r.name + "_clear", r.clear_metrics);
    if (r.obstructed_metrics) add(r.name + "_obstructed", *r.obstructed_metrics);
  }
  std::ostringstream out;
  out << std::setprecision(10) << "lag";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  if (traces.empty()) return out.str();
  for (std::size_t k = 0; k < traces.front()->lags.size(); ++k) {
    out << traces.front()->lags[k];
    for (const auto* t : traces) out << ',' << t->magnitude[k];
    out << '\n';
  }
  return out.str();
}

void write_text(const std::filesystem::path& dir, const std::string& name,
                const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + (dir / name).string());
  out << text;
  if (!out) fail(ErrorCode::Io, "write failed for " + (dir / name).string());
}

void write_fields(const std::filesystem::path& dir, const std::vector<ScenarioResult>& results) {
  const auto fields_dir = dir / "fields";
  std::error_code ec;
  std::filesystem::create_directories(fields_dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + fields_dir.string() + ": " + ec.message());
  for (const auto& r : results) {
    for (const auto& f : r.fields) write_field_binary(f.field, fields_dir / (f.label + ".oamf"));
  }
}

}  // namespace oamheal::harness
