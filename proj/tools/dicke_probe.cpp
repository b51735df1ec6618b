// Copyright 2026 The dicke-probe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// dicke-probe: run | sweep | validate.
// Exit codes: 0 ok, 1 config error, 2 numerical failure, 3 validation failure.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dicke/config.hpp"
#include "dicke/runner.hpp"
#include "dicke/validate.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

dicke::RunConfig load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dicke::ConfigError("cannot read config file '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return dicke::parse_config(text);
}

void emit(const dicke::RunConfig& cfg, const std::string& body) {
  if (cfg.output_path == "-") {
    std::cout << body << std::flush;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw dicke::ConfigError("output.path: cannot write '" + cfg.output_path + "'");
  out << body;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const dicke::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    // Everything past parsing is numerics: dimension caps, degeneracies,
    // non-finite values.
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective photon emission from lattice bosons, by exact diagonalization"};
  app.require_subcommand(1);

  std::string run_path;
  auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
  run->add_option("config", run_path, "Config file")->required();

  std::string sweep_path, axis = "dt";
  auto* sweep = app.add_subcommand("sweep", "Sweep one axis of a config, one row per point");
  sweep->add_option("config", sweep_path, "Config file")->required();
  sweep->add_option("--axis", axis, "dt | ramp_duration | kappa")
      ->check(CLI::IsMember({"dt", "ramp_duration", "kappa"}));

  auto* validate = app.add_subcommand("validate", "Run the built-in acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  if (*run) {
    return guarded([&] {
      const auto cfg = load(run_path);
      emit(cfg, dicke::format_rows(cfg, dicke::run_scenario(cfg)));
      return 0;
    });
  }
  if (*sweep) {
    return guarded([&] {
      const auto cfg = load(sweep_path);
      emit(cfg, dicke::format_rows(cfg, dicke::run_sweep(cfg, *dicke::parse_axis(axis))));
      return 0;
    });
  }
  if (*validate) {
    return guarded([&] {
      const auto report = dicke::validate::run();
      std::cout << report.text() << std::flush;
      return report.exit_code();
    });
  }
  return 0;
}
