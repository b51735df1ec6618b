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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/config.hpp"
#include "dicke/runner.hpp"
#include "dicke/validate.hpp"

using namespace dicke;

namespace {

RunConfig config(const std::string& text) { return parse_config(text); }

std::vector<std::vector<std::string>> csv_cells(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(cells);
  }
  return rows;
}

const std::string kSuperfluid =
    "lattice.Lx = 2\nlattice.Ly = 2\nmodel.J = 1\nscenario.type = superfluid\n"
    "probe.kappa_in = [1, 0]\nprobe.dt_list = [0, 1, 5]\nprobe.map_kappa_out = true\n";

}  // namespace

TEST(Run, SuperfluidMap) {
  const auto cfg = config(kSuperfluid);
  const auto rows = run_scenario(cfg);
  ASSERT_EQ(rows.size(), 12u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    EXPECT_EQ(r.dt, cfg.dt_list[i / 4]);  // dt-major
    EXPECT_EQ(r.kappa_out, momentum_grid(cfg.lattice())[i % 4]);
    const bool forward = r.kappa_out == MomentumIndex{1, 0};
    EXPECT_NEAR(r.P_rel, forward ? 16.0 : 4.0, 1e-9);
    ASSERT_TRUE(r.analytic_P.has_value());
    EXPECT_EQ(*r.analytic_P, forward ? 16.0 : 0.0);
  }
  const auto cells = csv_cells(format_csv(cfg, rows));
  ASSERT_EQ(cells.size(), 13u);
  const std::vector<std::string> head{"superfluid", "2", "2", "1", "0", "1", "0", "1", "0", "0"};
  EXPECT_TRUE(std::equal(head.begin(), head.end(), cells[2].begin()));
  EXPECT_NEAR(std::stod(cells[2][10]), 16.0, 1e-12);
  EXPECT_EQ(cells[2][11], "16");
}

TEST(Run, MottSuddenClosedForm) {
  const double dt = std::numbers::pi / 4.0;  // 2 J dt = pi / 2
  std::ostringstream text;
  text.precision(17);
  text << "lattice.Lx = 2\nmodel.J = 1\nscenario.type = mott_sudden\nprobe.kappa_in = [1, 0]\nprobe.dt_list = [" << dt
       << "]\n";
  const auto rows = run_scenario(config(text.str()));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(*rows[0].analytic_P, 0.0, 1e-12);
  // Exactly, A(pi)|1,1> = c0 b1 - b0 c1 is a zero-energy eigenstate of the
  // hopping, so nothing decays on two sites: the leading-order curve misses this.
  EXPECT_NEAR(rows[0].P_rel, 4.0, 1e-10);
}

TEST(Run, InteractingRowsHaveNoAnalyticValue) {
  const auto cfg = config("lattice.Lx = 3\nmodel.J = 1\nmodel.U = 2\nscenario.type = mott_sudden\n"
                          "probe.kappa_in = [1, 0]\nprobe.dt_list = [1]\n");
  const auto rows = run_scenario(cfg);
  EXPECT_FALSE(rows[0].analytic_P.has_value());
  const auto cells = csv_cells(format_csv(cfg, rows));
  EXPECT_EQ(cells[1].size(), 12u);
  EXPECT_EQ(cells[1].back(), "");
}

TEST(Run, SingleAtomCustom) {
  const auto rows = run_scenario(config("lattice.Lx = 1\nmodel.J = 1\nmodel.U = 1\nscenario.type = custom\n"
                                        "probe.kappa_in = [0, 0]\nprobe.dt_list = [0, 3]\n"));
  for (const auto& r : rows) EXPECT_NEAR(r.P_rel, 1.0, 1e-14);
}

TEST(Run, MixtureMatchesAnalyticAtZeroWait) {
  const auto rows = run_scenario(config("lattice.Lx = 6\nmodel.J = 1\nscenario.type = mixture\nscenario.N1 = 3\n"
                                        "scenario.N2 = 2\nprobe.kappa_in = [1, 0]\nprobe.dt_list = [0, 1]\n"));
  EXPECT_NEAR(rows[0].P_rel, 25.0, 1e-10);
  EXPECT_NEAR(*rows[0].analytic_P, 25.0, 1e-12);
  EXPECT_GT(rows[1].P_rel, 0.0);
}

TEST(Run, Adiabatic) {
  const auto cfg = config("lattice.Lx = 4\nmodel.J = 1\nmodel.U = 1\nscenario.type = adiabatic\n"
                          "probe.kappa_in = [0, 0]\nramp.duration = 30\nramp.steps = 600\n");
  const auto rows = run_scenario(cfg);
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_TRUE(rows[0].fidelity.has_value());
  EXPECT_GT(*rows[0].fidelity, 0.95);
  EXPECT_EQ(rows[0].dt, 30.0);
  EXPECT_EQ(*rows[0].analytic_P, 4.0);
  const auto cells = csv_cells(format_csv(cfg, rows));
  EXPECT_EQ(cells[0].back(), "fidelity");
  EXPECT_EQ(cells[1].size(), 13u);
}

TEST(Sweep, DtSweepOfCondensateIsConstant) {
  auto cfg = config(kSuperfluid);
  cfg.dt_list = {10.0, 0.0, 2.5, 1.0};
  const auto rows = run_sweep(cfg, SweepAxis::dt);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].P_rel, 16.0, 1e-9);
    if (i) {
      EXPECT_LT(rows[i - 1].dt, rows[i].dt);
    }
  }
}

TEST(Sweep, MottAtZeroKappaIsNSquared) {
  const auto rows = run_sweep(config("lattice.Lx = 5\nmodel.J = 1\nscenario.type = mott_sudden\n"
                                     "probe.kappa_in = [0, 0]\nprobe.dt_list = [0, 0.5, 1, 2, 4]\n"),
                              SweepAxis::dt);
  for (const auto& r : rows) EXPECT_NEAR(r.P_rel, 25.0, 1e-9);
}

TEST(Sweep, RampDurationFidelityImproves) {
  const auto cfg = config("lattice.Lx = 4\nmodel.J = 1\nmodel.U = 1\nscenario.type = adiabatic\n"
                          "probe.kappa_in = [0, 0]\nramp.duration = 1\nramp.steps = 400\n"
                          "sweep.ramp_durations = [30, 1, 3]\n");
  const auto rows = run_sweep(cfg, SweepAxis::ramp_duration);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].dt, 1.0);
  EXPECT_EQ(rows[2].dt, 30.0);
  EXPECT_LT(*rows[0].fidelity, *rows[2].fidelity);
  EXPECT_THROW(run_sweep(cfg, SweepAxis::dt), ConfigError);
}

TEST(Sweep, KappaWalksTheGrid) {
  const auto cfg = config("lattice.Lx = 4\nmodel.J = 1\nscenario.type = mott_sudden\n"
                          "probe.kappa_in = [0, 0]\nprobe.dt_list = [1, 0]\n");
  const auto rows = run_sweep(cfg, SweepAxis::kappa);
  ASSERT_EQ(rows.size(), 8u);
  const auto grid = momentum_grid(cfg.lattice());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].kappa_in, grid[i / 2]);
    EXPECT_EQ(rows[i].kappa_out, grid[i / 2]);
    EXPECT_EQ(rows[i].dt, i % 2 ? 1.0 : 0.0);
  }
  EXPECT_THROW(run_sweep(cfg, SweepAxis::ramp_duration), ConfigError);
}

TEST(Output, CsvRoundTripsAtSeventeenDigits) {
  auto cfg = config("lattice.Lx = 5\nmodel.J = 0.7\nscenario.type = mott_sudden\n"
                    "probe.kappa_in = [2, 0]\nprobe.dt_list = [0.1, 0.3333333333333333, 2.7]\n"
                    "probe.map_kappa_out = true\n");
  const auto rows = run_scenario(cfg);
  const auto cells = csv_cells(format_csv(cfg, rows));
  EXPECT_EQ(cells[0], (std::vector<std::string>{"scenario", "Lx", "Ly", "J", "U", "kin_nx", "kin_ny", "kout_nx",
                                                "kout_ny", "dt", "P_rel", "P_analytic"}));
  ASSERT_EQ(cells.size(), rows.size() + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(std::strtod(cells[i + 1][9].c_str(), nullptr), rows[i].dt);
    EXPECT_EQ(std::strtod(cells[i + 1][10].c_str(), nullptr), rows[i].P_rel);
    EXPECT_EQ(std::strtod(cells[i + 1][11].c_str(), nullptr), *rows[i].analytic_P);
    EXPECT_GE(rows[i].P_rel, 0.0);
    EXPECT_TRUE(std::isfinite(rows[i].P_rel));
  }
  for (double x : {0.1, 1.0 / 3.0, 2.0 / 7.0 * 1e-300, 123456.789e10, -0.0}) {
    EXPECT_EQ(std::strtod(format_real(x).c_str(), nullptr), x);
  }
}

TEST(Output, Json) {
  auto cfg = config("lattice.Lx = 3\nmodel.J = 1\nmodel.U = 1\nscenario.type = custom\n"
                    "probe.kappa_in = [1, 0]\nprobe.dt_list = [0, 1]\noutput.format = json\n");
  const auto rows = run_scenario(cfg);
  const auto doc = nlohmann::json::parse(format_rows(cfg, rows));
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[0]["scenario"], "custom");
  EXPECT_EQ(doc[1]["dt"], 1.0);
  EXPECT_TRUE(doc[1]["P_analytic"].is_null());
  EXPECT_EQ(doc[1]["P_rel"].get<double>(), rows[1].P_rel);
  EXPECT_EQ(doc[0]["kin_nx"], 1);
}

TEST(Output, IndependentOfThreadCount) {
  const auto cfg = config("lattice.Lx = 5\nmodel.J = 1\nmodel.U = 0.5\nscenario.type = custom\n"
                          "probe.kappa_in = [1, 0]\nprobe.dt_list = [0, 0.5, 1, 2, 3, 4, 5]\nprobe.map_kappa_out = true\n");
  ::setenv("DICKE_PROBE_THREADS", "1", 1);
  const auto serial = format_csv(cfg, run_scenario(cfg));
  ::setenv("DICKE_PROBE_THREADS", "4", 1);
  const auto threaded = format_csv(cfg, run_scenario(cfg));
  ::unsetenv("DICKE_PROBE_THREADS");
  EXPECT_EQ(serial, threaded);
  EXPECT_EQ(serial, format_csv(cfg, run_scenario(cfg)));
}

TEST(Validate, BrokenReductionSignFailsA3) {
  validate::Options broken;
  broken.reduction = [](double J, double dt, MomentumIndex k, const LatticeSpec& s) {
    return -analytic::reduction_j(J, dt, k, s);
  };
  validate::Report report;
  report.criteria.push_back(validate::check_a3(broken));
  EXPECT_FALSE(report.criteria[0].passed);
  EXPECT_EQ(report.exit_code(), 3);
  EXPECT_NE(report.text().find("A3 FAIL"), std::string::npos);

  validate::Report good;
  good.criteria.push_back(validate::check_a3({}));
  EXPECT_TRUE(good.criteria[0].passed) << good.criteria[0].detail;
  EXPECT_EQ(good.exit_code(), 0);
}
