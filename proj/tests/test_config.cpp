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


#include <gtest/gtest.h>

#include <string>

#include "dicke/config.hpp"

using dicke::ConfigError;
using dicke::parse_config;

namespace {

const char* kMinimal =
    "lattice.Lx = 2\n"
    "lattice.Ly = 2\n"
    "model.J = 1\n"
    "scenario.type = superfluid\n"
    "probe.kappa_in = [0, 0]\n"
    "probe.dt_list = [0]\n";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(Config, MinimalSuperfluid) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(c.Lx, 2);
  EXPECT_EQ(c.Ly, 2);
  EXPECT_EQ(c.spacing, 1.0);
  EXPECT_EQ(c.J, 1.0);
  EXPECT_EQ(c.U, 0.0);
  EXPECT_EQ(c.cb_interaction, 1.0);
  EXPECT_EQ(c.scenario, dicke::ScenarioType::superfluid);
  EXPECT_EQ(c.dt_list, std::vector<double>{0.0});
  EXPECT_FALSE(c.map_kappa_out);
  EXPECT_EQ(c.output_path, "-");
  EXPECT_EQ(c.format, dicke::OutputFormat::csv);
}

TEST(Config, EmptyInput) {
  EXPECT_EQ(error_of(""), "missing section: lattice");
  EXPECT_EQ(error_of("# only a comment\n\n"), "missing section: lattice");
}

TEST(Config, ModeOutOfGrid) {
  const auto msg = error_of(
      "lattice.Lx = 4\nmodel.J = 1\nscenario.type = superfluid\nprobe.kappa_in = [9,0]\nprobe.dt_list = [0]\n");
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
  EXPECT_NE(msg.find("probe.kappa_in"), std::string::npos) << msg;
  EXPECT_NE(msg.find("nx in [-1, 2]"), std::string::npos) << msg;
}

TEST(Config, Diagnostics) {
  EXPECT_EQ(error_of("lattice.Lx = 2\nlattice.size = 3\n"), "line 2: lattice.size: unknown key");
  EXPECT_EQ(error_of("lattice.Lx = two\n"), "line 1: lattice.Lx: expected an integer, got 'two'");
  EXPECT_EQ(error_of("lattice.Lx 2\n"), "line 1: lattice.Lx 2: expected 'section.key = value'");
  EXPECT_EQ(error_of("Lx = 2\n"), "line 1: Lx: keys must look like section.key");
  EXPECT_EQ(error_of("lattice.Lx = 2\nlattice.Lx = 3\n"), "line 2: lattice.Lx: duplicate key (first set at line 1)");
  EXPECT_EQ(error_of("lattice.Lx = 2\n"), "missing section: model");
  EXPECT_EQ(error_of("lattice.Lx = 2\nmodel.U = 1\nscenario.type = custom\nprobe.dt_list = [1]\n"),
            "missing required key: model.J (section 'model' first appears at line 2)");
  EXPECT_EQ(error_of(std::string(kMinimal) + "model.U = -1\n"), "line 7: model.U: must be >= 0");
  EXPECT_EQ(error_of(std::string(kMinimal) + "output.format = xml\n"),
            "line 7: output.format: expected csv or json, got 'xml'");
  const auto bad_list = error_of("lattice.Lx = 2\nmodel.J = 1\nscenario.type = superfluid\n"
                                 "probe.kappa_in = [0, 0]\nprobe.dt_list = 0.5\n");
  EXPECT_EQ(bad_list, "line 5: probe.dt_list: expected a list like [a, b], got '0.5'");
  const auto empty = error_of("lattice.Lx = 2\nmodel.J = 1\nscenario.type = superfluid\n"
                              "probe.kappa_in = [0, 0]\nprobe.dt_list = []\n");
  EXPECT_EQ(empty, "line 5: probe.dt_list: must not be empty");
  EXPECT_EQ(error_of("lattice.Lx = 2\nmodel.J = 1\nscenario.type = bec\n"),
            "line 3: scenario.type: expected superfluid|mott_sudden|mixture|adiabatic|custom, got 'bec'");
}

TEST(Config, CommentsAndWhitespace) {
  const auto c = parse_config(
      "  lattice.Lx=6   # chain\n"
      "model.J = 0.5\r\n"
      "model.U = 2 # strong\n"
      "scenario.type = mott_sudden\n"
      "probe.kappa_in = [ -2 , 0 ]\n"
      "probe.dt_list = [0, 1e-1, 2.5]\n"
      "probe.map_kappa_out = true\n"
      "output.path = out.json\n"
      "output.format = json\n");
  EXPECT_EQ(c.Lx, 6);
  EXPECT_EQ(c.U, 2.0);
  EXPECT_EQ((c.kappa_in), (dicke::MomentumIndex{-2, 0}));
  EXPECT_EQ(c.dt_list, (std::vector<double>{0.0, 0.1, 2.5}));
  EXPECT_TRUE(c.map_kappa_out);
  EXPECT_EQ(c.output_path, "out.json");
  EXPECT_EQ(c.format, dicke::OutputFormat::json);
}

TEST(Config, Mixture) {
  const std::string base = "lattice.Lx = 6\nmodel.J = 1\nscenario.type = mixture\nprobe.kappa_in = [3, 0]\n"
                           "probe.dt_list = [1]\n";
  const auto c = parse_config(base + "scenario.N1 = 3\nscenario.N2 = 3\n");
  EXPECT_EQ(c.N1, 3);
  EXPECT_EQ(c.N2, 3);
  EXPECT_EQ(error_of(base + "scenario.N1 = 3\n"), "missing required key: scenario.N2 (section 'scenario' first appears at line 3)");
  EXPECT_EQ(error_of(base + "scenario.N1 = 0\nscenario.N2 = 6\n"),
            "line 7: scenario.N2: must be < 6 (one atom per nonzero mode)");
}

TEST(Config, AdiabaticDefaults) {
  const std::string base = "lattice.Lx = 4\nmodel.J = 1\nmodel.U = 2\nscenario.type = adiabatic\nprobe.kappa_in = [0, 0]\n";
  EXPECT_EQ(error_of(base), "missing section: ramp");
  const auto c = parse_config(base + "ramp.duration = 10\nramp.steps = 100\nsweep.ramp_durations = [1, 10]\n");
  EXPECT_EQ(c.ramp.duration, 10.0);
  EXPECT_EQ(c.ramp.steps, 100);
  EXPECT_EQ(c.ramp.profile, dicke::RampProfile::smoothstep);
  EXPECT_DOUBLE_EQ(c.ramp.J_start, 0.04);
  EXPECT_EQ(c.ramp.U_start, 2.0);
  EXPECT_EQ(c.ramp.J_end, 1.0);
  EXPECT_EQ(c.ramp.U_end, 0.0);
  EXPECT_EQ(c.sweep_ramp_durations, (std::vector<double>{1.0, 10.0}));
  EXPECT_TRUE(c.dt_list.empty());
  EXPECT_EQ(error_of(base + "ramp.duration = 10\nramp.steps = 0\n"), "line 7: ramp.steps: must be >= 1");
  EXPECT_EQ(error_of(base + "ramp.duration = 10\nramp.steps = 5\nramp.profile = cubic\n"),
            "line 8: ramp.profile: expected linear or smoothstep, got 'cubic'");
}

TEST(Config, TwoDimensionalModeRange) {
  const std::string base = "lattice.Lx = 3\nlattice.Ly = 4\nmodel.J = 1\nscenario.type = superfluid\nprobe.dt_list = [0]\n";
  EXPECT_NO_THROW(parse_config(base + "probe.kappa_in = [-1, 2]\n"));
  EXPECT_NO_THROW(parse_config(base + "probe.kappa_in = [1, -1]\n"));
  EXPECT_THROW(parse_config(base + "probe.kappa_in = [2, 0]\n"), ConfigError);
  EXPECT_THROW(parse_config(base + "probe.kappa_in = [0, -2]\n"), ConfigError);
  EXPECT_THROW(parse_config(base + "probe.kappa_in = [0, 0, 0]\n"), ConfigError);
}
