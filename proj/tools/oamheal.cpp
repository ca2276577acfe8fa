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

// Command-line front end: plan, simulate, experiment, heal-curve.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oamheal/config.hpp"
#include "oamheal/error.hpp"
#include "oamheal/experiment.hpp"
#include "oamheal/report.hpp"

namespace fs = std::filesystem;
using namespace oamheal;
using namespace oamheal::harness;

namespace {

struct CommonOptions {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid;
  std::optional<double> snr_db;
  std::vector<int> modes;
  bool dump_fields = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool beams) {
  cmd->add_option("--config", o.config, "experiment JSON (defaults when omitted)");
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  cmd->add_option("--seed", o.seed, "pilot seed and first noise seed");
  cmd->add_option("--grid", o.grid, "grid side in samples (power of two)");
  cmd->add_option("--snr-db", o.snr_db, "per-antenna SNR at unit channel gain");
  if (beams) cmd->add_option("--mode", o.modes, "restrict to these OAM orders");
}

ExperimentConfig resolve(const CommonOptions& o) {
  ExperimentConfig c = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  if (o.seed) {
    c.rx.pilot_seed = *o.seed;
    c.rx.first_noise_seed = *o.seed;
  }
  if (o.grid) c.grid.side = *o.grid;
  if (o.snr_db) c.rx.snr_db = *o.snr_db;
  if (!o.modes.empty()) {
    std::vector<BeamConfig> kept;
    for (const auto& b : c.beams) {
      for (int m : o.modes) {
        if (b.mode == m) kept.push_back(b);
      }
    }
    if (kept.empty()) fail(ErrorCode::Config, "--mode matches no configured beam");
    c.beams = kept;
  }
  c.validate();
  return c;
}

std::vector<ScenarioResult> run_all(const ExperimentConfig& c, bool keep_fields) {
  std::vector<ScenarioResult> out;
  for (auto s : build_scenarios(c)) {
    s.keep_fields = keep_fields;
    std::cerr << "scenario " << s.name << " ...\n";
    out.push_back(run_scenario(s));
  }
  return out;
}

void print_summary(const ExperimentReport& r) {
  for (const auto& b : r.beams) {
    std::printf("l=%+d  dP=%+.2f dB  dSNR=%+.2f dB  dEVM=%+.2f %%  similarity(L)=%.4f\n",
                b.scenario.mode.order(), b.noiseless.avg_power_db, b.noisy_mean.avg_snr_db,
                b.noisy_mean.combined_evm_pct, b.scenario.curve.similarity.back());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oamheal: OAM beam self-healing link simulator"};
  app.require_subcommand(1);

  CommonOptions plan_opts;
  auto* plan = app.add_subcommand("plan", "derive the link geometry");
  plan->add_option("--config", plan_opts.config, "experiment JSON");
  plan->add_option("--out", plan_opts.out, "output directory")->capture_default_str();

  CommonOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "run scenarios and the receive chain once");
  add_common(simulate, sim_opts, true);
  simulate->add_flag("--dump-fields", sim_opts.dump_fields, "write field snapshots");

  CommonOptions exp_opts;
  auto* experiment = app.add_subcommand("experiment", "clear vs obstructed comparison");
  add_common(experiment, exp_opts, false);
  experiment->add_flag("--dump-fields", exp_opts.dump_fields, "write field snapshots");

  CommonOptions heal_opts;
  auto* heal = app.add_subcommand("heal-curve", "field similarity and mode purity vs z");
  add_common(heal, heal_opts, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) {
      const auto c = resolve(plan_opts);
      const auto text = plan_json(c);
      write_text(plan_opts.out, "plan.json", text);
      std::cout << text;
    } else if (simulate->parsed()) {
      const auto c = resolve(sim_opts);
      const auto results = run_all(c, sim_opts.dump_fields);
      write_text(sim_opts.out, "report.json", scenarios_json(c, results));
      write_text(sim_opts.out, "healing_curve.csv", healing_csv(results));
      write_text(sim_opts.out, "correlations.csv", correlations_csv(results));
      if (sim_opts.dump_fields) write_fields(sim_opts.out, results);
    } else if (experiment->parsed()) {
      const auto c = resolve(exp_opts);
      const auto report = run_experiment(c, exp_opts.dump_fields);
      std::vector<ScenarioResult> results;
      for (const auto& b : report.beams) results.push_back(b.scenario);
      write_text(exp_opts.out, "report.json", experiment_json(report));
      write_text(exp_opts.out, "healing_curve.csv", healing_csv(results));
      write_text(exp_opts.out, "correlations.csv", correlations_csv(results));
      if (exp_opts.dump_fields) write_fields(exp_opts.out, results);
      print_summary(report);
    } else if (heal->parsed()) {
      const auto c = resolve(heal_opts);
      const auto results = run_all(c, false);
      const auto text = healing_csv(results);
      write_text(heal_opts.out, "healing_curve.csv", text);
      std::cout << text;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
