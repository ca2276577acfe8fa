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

#include "oamheal/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "internal/config_json.hpp"
#include "oamheal/error.hpp"
#include "oamheal/units.hpp"

namespace oamheal::harness {

using detail::Json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::Config, "config: " + path + ": " + what);
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void only_keys(const Json& obj, const std::string& path,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) bad(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      bad(join(path, item.key()), "unknown key");
    }
  }
}

void read(const Json& obj, const std::string& path, std::string_view key, double& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number()) bad(join(path, key), "expected a number");
  out = it->get<double>();
  if (!std::isfinite(out)) bad(join(path, key), "must be finite");
}

void read(const Json& obj, const std::string& path, std::string_view key, int& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number_integer()) bad(join(path, key), "expected an integer");
  out = it->get<int>();
}

void read(const Json& obj, const std::string& path, std::string_view key,
          std::size_t& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number_unsigned()) bad(join(path, key), "expected a non-negative integer");
  out = it->get<std::size_t>();
}

void read(const Json& obj, const std::string& path, std::string_view key, bool& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_boolean()) bad(join(path, key), "expected true or false");
  out = it->get<bool>();
}

void read(const Json& obj, const std::string& path, std::string_view key, std::string& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_string()) bad(join(path, key), "expected a string");
  out = it->get<std::string>();
}

void read_link(const Json& j, const std::string& path, ExperimentConfig& c) {
  only_keys(j, path, {"bandwidth_hz", "num_modes", "link_distance_m", "rx_spacing_m",
                      "digital_if_hz", "rf_frequency_hz", "design_beam_radius_m",
                      "wavelength_override_m"});
  read(j, path, "bandwidth_hz", c.link.bandwidth_hz);
  read(j, path, "num_modes", c.link.num_modes);
  read(j, path, "link_distance_m", c.link.link_distance_m);
  read(j, path, "rx_spacing_m", c.link.rx_spacing_m);
  read(j, path, "digital_if_hz", c.link.digital_if_hz);
  read(j, path, "rf_frequency_hz", c.link.rf_frequency_hz);
  read(j, path, "design_beam_radius_m", c.design_beam_radius_m);
  read(j, path, "wavelength_override_m", c.wavelength_override_m);
}

void read_grid(const Json& j, const std::string& path, GridConfig& g) {
  only_keys(j, path, {"side", "extent_m", "padding", "max_step_m", "max_truncated_fraction"});
  read(j, path, "side", g.side);
  read(j, path, "extent_m", g.extent_m);
  read(j, path, "padding", g.padding);
  read(j, path, "max_step_m", g.max_step_m);
  read(j, path, "max_truncated_fraction", g.max_truncated_fraction);
}

beam::SourceModel parse_model(const std::string& s, const std::string& path) {
  if (s == "point_splat") return beam::SourceModel::PointSplat;
  if (s == "analytic_ring") return beam::SourceModel::AnalyticRing;
  bad(path, "expected \"point_splat\" or \"analytic_ring\", got \"" + s + "\"");
}

void read_source(const Json& j, const std::string& path, SourceConfig& s) {
  only_keys(j, path, {"model", "num_elements", "angular_aperture_deg", "rolloff_fraction",
                      "reference_mode", "reference_radius_m"});
  std::string model = s.model == beam::SourceModel::PointSplat ? "point_splat" : "analytic_ring";
  read(j, path, "model", model);
  s.model = parse_model(model, join(path, "model"));
  read(j, path, "num_elements", s.num_elements);
  read(j, path, "angular_aperture_deg", s.angular_aperture_deg);
  read(j, path, "rolloff_fraction", s.rolloff_fraction);
  read(j, path, "reference_mode", s.reference_mode);
  read(j, path, "reference_radius_m", s.reference_radius_m);
}

void read_beams(const Json& j, const std::string& path, std::vector<BeamConfig>& beams) {
  if (!j.is_array()) bad(path, "expected an array");
  beams.clear();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const Json& b = j[i];
    only_keys(b, p, {"mode", "radius_m"});
    if (!b.contains("mode")) bad(p + ".mode", "required");
    BeamConfig beam;
    read(b, p, "mode", beam.mode);
    const auto r = b.find("radius_m");
    if (r != b.end()) {
      if (r->is_string() && r->get<std::string>() == "matched") {
        beam.radius_m.reset();
      } else if (r->is_number()) {
        beam.radius_m = r->get<double>();
      } else {
        bad(p + ".radius_m", "expected a number or \"matched\"");
      }
    } else {
      beam.radius_m.reset();
    }
    beams.push_back(beam);
  }
}

void read_obstruction(const Json& j, const std::string& path,
                      std::optional<propagation::ObstructionMask>& out) {
  if (j.is_null()) {
    out.reset();
    return;
  }
  only_keys(j, path, {"shape", "center_x_m", "center_y_m", "width_m", "height_m", "z_m",
                      "transmittance"});
  propagation::ObstructionMask m = ExperimentConfig::default_obstruction();
  std::string shape = "rectangle";
  read(j, path, "shape", shape);
  if (shape == "rectangle") {
    m.shape = propagation::MaskShape::Rectangle;
  } else if (shape == "disk") {
    m.shape = propagation::MaskShape::Disk;
  } else {
    bad(join(path, "shape"), "expected \"rectangle\" or \"disk\", got \"" + shape + "\"");
  }
  read(j, path, "center_x_m", m.center_x_m);
  read(j, path, "center_y_m", m.center_y_m);
  read(j, path, "width_m", m.width_m);
  read(j, path, "height_m", m.height_m);
  read(j, path, "z_m", m.z_m);
  read(j, path, "transmittance", m.transmittance);
  out = m;
}

void read_receivers(const Json& j, const std::string& path, ReceiverConfig& r) {
  only_keys(j, path, {"count", "spacing_m", "offset_angle_deg", "center_x_m", "positions"});
  read(j, path, "count", r.count);
  read(j, path, "spacing_m", r.spacing_m);
  read(j, path, "offset_angle_deg", r.offset_angle_deg);
  read(j, path, "center_x_m", r.center_x_m);
  const auto it = j.find("positions");
  if (it == j.end()) return;
  const std::string p = join(path, "positions");
  if (!it->is_array()) bad(p, "expected an array of [x, y] pairs");
  r.positions.clear();
  for (std::size_t i = 0; i < it->size(); ++i) {
    const Json& xy = (*it)[i];
    if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number() || !xy[1].is_number()) {
      bad(p + "[" + std::to_string(i) + "]", "expected [x, y]");
    }
    r.positions.push_back({xy[0].get<double>(), xy[1].get<double>()});
  }
}

void read_rx(const Json& j, const std::string& path, RxChainConfig& r) {
  only_keys(j, path, {"snr_db", "pilot_symbols", "pilot_seed", "first_noise_seed",
                      "noise_seed_count", "max_lag", "equalize_clear_power"});
  read(j, path, "snr_db", r.snr_db);
  read(j, path, "pilot_symbols", r.pilot_symbols);
  read(j, path, "pilot_seed", r.pilot_seed);
  read(j, path, "first_noise_seed", r.first_noise_seed);
  read(j, path, "noise_seed_count", r.noise_seed_count);
  read(j, path, "max_lag", r.max_lag);
  read(j, path, "equalize_clear_power", r.equalize_clear_power);
}

void read_healing(const Json& j, const std::string& path, HealingConfig& h) {
  only_keys(j, path, {"z_m", "annulus_inner", "annulus_outer", "exact_peak"});
  const auto it = j.find("z_m");
  if (it != j.end()) {
    const std::string p = join(path, "z_m");
    if (!it->is_array()) bad(p, "expected an array of numbers");
    h.z_m.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_number()) bad(p + "[" + std::to_string(i) + "]", "expected a number");
      h.z_m.push_back((*it)[i].get<double>());
    }
  }
  read(j, path, "annulus_inner", h.annulus_inner);
  read(j, path, "annulus_outer", h.annulus_outer);
  read(j, path, "exact_peak", h.exact_peak);
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

propagation::ObstructionMask ExperimentConfig::default_obstruction() {
  propagation::ObstructionMask m;
  m.shape = propagation::MaskShape::Rectangle;
  m.center_x_m = 0.0;
  m.center_y_m = -0.30;
  m.width_m = 1.0;
  m.height_m = 0.5;
  m.z_m = 10.0;
  m.transmittance = 0.0;
  return m;
}

double ExperimentConfig::wavelength_m() const {
  return wavelength_override_m > 0.0 ? wavelength_override_m
                                     : wavelength_from_frequency(link.rf_frequency_hz);
}

void ExperimentConfig::validate() const {
  auto wrap = [](const std::string& path, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Config) throw;
      bad(path, e.what());
    }
  };
  wrap("link", [&] { link.validate(); });
  if (!(design_beam_radius_m > 0.0)) bad("link.design_beam_radius_m", "must be positive");
  if (!(grid.extent_m > 0.0)) bad("grid.extent_m", "must be positive");
  wrap("grid.side", [&] { GridSpec::from_extent(grid.side, grid.extent_m).validate(); });
  if (grid.padding != 1 && grid.padding != 2 && grid.padding != 4) {
    bad("grid.padding", "must be 1, 2 or 4");
  }
  if (!(grid.max_step_m > 0.0)) bad("grid.max_step_m", "must be positive");
  if (!(grid.max_truncated_fraction >= 0.0)) bad("grid.max_truncated_fraction", "must be >= 0");
  if (source.num_elements < 1) bad("source.num_elements", "must be positive");
  if (!(source.rolloff_fraction >= 0.0 && source.rolloff_fraction <= 1.0)) {
    bad("source.rolloff_fraction", "must lie in [0, 1]");
  }
  if (!(source.reference_radius_m > 0.0)) bad("source.reference_radius_m", "must be positive");
  if (beams.empty()) bad("beams", "at least one beam is required");
  for (std::size_t i = 0; i < beams.size(); ++i) {
    const std::string p = "beams[" + std::to_string(i) + "]";
    wrap(p + ".mode", [&] { (void)OamMode{beams[i].mode}; });
    if (beams[i].radius_m && !(*beams[i].radius_m > 0.0)) bad(p + ".radius_m", "must be positive");
    if (!beams[i].radius_m && beams[i].mode == 0) {
      bad(p + ".radius_m", "mode 0 cannot be matched; give a radius");
    }
  }
  if (obstruction) {
    wrap("obstruction", [&] { obstruction->validate(); });
    if (!(obstruction->z_m < link.link_distance_m)) {
      bad("obstruction.z_m", "must lie before the receivers at link_distance_m");
    }
  }
  if (receivers.positions.empty()) {
    if (receivers.count < 1) bad("receivers.count", "must be positive");
    if (!(receivers.spacing_m >= 0.0)) bad("receivers.spacing_m", "must be >= 0");
  }
  if (!(rx.snr_db > -100.0)) bad("rx.snr_db", "must exceed -100 dB");
  if (rx.pilot_symbols < 1024) bad("rx.pilot_symbols", "must be >= 1024");
  if (rx.noise_seed_count < 1) bad("rx.noise_seed_count", "must be positive");
  if (rx.max_lag < 0) bad("rx.max_lag", "must be >= 0");
  if (healing.z_m.empty()) bad("healing.z_m", "at least one plane is required");
  double previous = obstruction ? obstruction->z_m : 0.0;
  for (std::size_t i = 0; i < healing.z_m.size(); ++i) {
    if (!(healing.z_m[i] > previous)) {
      bad("healing.z_m[" + std::to_string(i) + "]",
          "planes must increase strictly and lie beyond the obstruction");
    }
    previous = healing.z_m[i];
  }
  if (std::abs(healing.z_m.back() - link.link_distance_m) > 1e-9) {
    bad("healing.z_m", "last plane must equal link_distance_m");
  }
  if (!(healing.annulus_inner >= 0.0 && healing.annulus_outer > healing.annulus_inner)) {
    bad("healing", "annulus factors must satisfy 0 <= inner < outer");
  }
  if (max_concurrency < 0) bad("max_concurrency", "must be >= 0");
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Config, std::string(origin) + ": malformed JSON at " +
                                line_column(text, e.byte) + ": " + e.what());
  }
  ExperimentConfig c;
  try {
    only_keys(j, "", {"name", "link", "grid", "source", "beams", "obstruction", "receivers",
                      "rx", "healing", "max_concurrency"});
    read(j, "", "name", c.name);
    if (j.contains("link")) read_link(j["link"], "link", c);
    if (j.contains("grid")) read_grid(j["grid"], "grid", c.grid);
    if (j.contains("source")) read_source(j["source"], "source", c.source);
    if (j.contains("beams")) read_beams(j["beams"], "beams", c.beams);
    if (j.contains("obstruction")) read_obstruction(j["obstruction"], "obstruction", c.obstruction);
    if (j.contains("receivers")) read_receivers(j["receivers"], "receivers", c.receivers);
    if (j.contains("rx")) read_rx(j["rx"], "rx", c.rx);
    if (j.contains("healing")) read_healing(j["healing"], "healing", c.healing);
    read(j, "", "max_concurrency", c.max_concurrency);
    c.validate();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string(origin) + ": " + e.what());
  } catch (const Error& e) {
    fail(ErrorCode::Config, std::string(origin) + ": " + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

namespace detail {

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["name"] = c.name;
  j["link"] = {
      {"bandwidth_hz", c.link.bandwidth_hz},
      {"num_modes", c.link.num_modes},
      {"link_distance_m", c.link.link_distance_m},
      {"rx_spacing_m", c.link.rx_spacing_m},
      {"digital_if_hz", c.link.digital_if_hz},
      {"rf_frequency_hz", c.link.rf_frequency_hz},
      {"design_beam_radius_m", c.design_beam_radius_m},
      {"wavelength_override_m", c.wavelength_override_m},
  };
  j["grid"] = {
      {"side", c.grid.side},
      {"extent_m", c.grid.extent_m},
      {"padding", c.grid.padding},
      {"max_step_m", c.grid.max_step_m},
      {"max_truncated_fraction", c.grid.max_truncated_fraction},
  };
  j["source"] = {
      {"model", c.source.model == beam::SourceModel::PointSplat ? "point_splat" : "analytic_ring"},
      {"num_elements", c.source.num_elements},
      {"angular_aperture_deg", c.source.angular_aperture_deg},
      {"rolloff_fraction", c.source.rolloff_fraction},
      {"reference_mode", c.source.reference_mode},
      {"reference_radius_m", c.source.reference_radius_m},
  };
  Json beams = Json::array();
  for (const auto& b : c.beams) {
    Json e;
    e["mode"] = b.mode;
    if (b.radius_m) {
      e["radius_m"] = *b.radius_m;
    } else {
      e["radius_m"] = "matched";
    }
    beams.push_back(e);
  }
  j["beams"] = beams;
  if (c.obstruction) {
    const auto& m = *c.obstruction;
    j["obstruction"] = {
        {"shape", m.shape == propagation::MaskShape::Rectangle ? "rectangle" : "disk"},
        {"center_x_m", m.center_x_m},
        {"center_y_m", m.center_y_m},
        {"width_m", m.width_m},
        {"height_m", m.height_m},
        {"z_m", m.z_m},
        {"transmittance", m.transmittance},
    };
  } else {
    j["obstruction"] = nullptr;
  }
  Json positions = Json::array();
  for (const auto& p : c.receivers.positions) positions.push_back({p.x, p.y});
  j["receivers"] = {
      {"count", c.receivers.count},
      {"spacing_m", c.receivers.spacing_m},
      {"offset_angle_deg", c.receivers.offset_angle_deg},
      {"center_x_m", c.receivers.center_x_m},
      {"positions", positions},
  };
  j["rx"] = {
      {"snr_db", c.rx.snr_db},
      {"pilot_symbols", c.rx.pilot_symbols},
      {"pilot_seed", c.rx.pilot_seed},
      {"first_noise_seed", c.rx.first_noise_seed},
      {"noise_seed_count", c.rx.noise_seed_count},
      {"max_lag", c.rx.max_lag},
      {"equalize_clear_power", c.rx.equalize_clear_power},
  };
  j["healing"] = {
      {"z_m", c.healing.z_m},
      {"annulus_inner", c.healing.annulus_inner},
      {"annulus_outer", c.healing.annulus_outer},
      {"exact_peak", c.healing.exact_peak},
  };
  j["max_concurrency"] = c.max_concurrency;
  return j;
}

}  // namespace detail

std::string dump_config(const ExperimentConfig& config) {
  return detail::config_to_json(config).dump(2) + "\n";
}

}  // namespace oamheal::harness
