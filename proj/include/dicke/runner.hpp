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

#ifndef DICKE_RUNNER_HPP
#define DICKE_RUNNER_HPP

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/analytic.hpp"
#include "dicke/config.hpp"
#include "dicke/parallel.hpp"
#include "dicke/protocol.hpp"

namespace dicke {

enum class SweepAxis { dt, ramp_duration, kappa };

inline std::optional<SweepAxis> parse_axis(const std::string& s) {
  if (s == "dt") return SweepAxis::dt;
  if (s == "ramp_duration") return SweepAxis::ramp_duration;
  if (s == "kappa") return SweepAxis::kappa;
  return std::nullopt;
}

namespace detail {

struct PreparedScenario {
  BasisPtr ground;
  ManyBodyState psi0;
};

inline PreparedScenario prepare_scenario(const RunConfig& cfg) {
  const LatticeSpec spec = cfg.lattice();
  const int n = static_cast<int>(spec.num_sites());
  switch (cfg.scenario) {
    case ScenarioType::superfluid: {
      auto g = FockBasis::build(spec, n, 0);
      return {g, prepare_superfluid(g)};
    }
    case ScenarioType::mott_sudden: {
      auto g = FockBasis::build(spec, n, 0);
      return {g, prepare_mott(g)};
    }
    case ScenarioType::mixture: {
      auto g = FockBasis::build(spec, cfg.N1 + cfg.N2, 0);
      return {g, prepare_momentum_fock(g, mixture_modes(spec, {cfg.N1, cfg.N2}))};
    }
    case ScenarioType::custom: {
      auto g = FockBasis::build(spec, n, 0);
      return {g, ground_state(hamiltonian(g, {cfg.J, cfg.U, cfg.cb_interaction})).state};
    }
    case ScenarioType::adiabatic:
      break;
  }
  throw InvalidArgument("adiabatic scenarios have no static initial state");
}

// Leading-order predictions; these carry the delta(kin, kout) of the closed-form
// formulas. Only meaningful when the waiting Hamiltonian is interaction free.
inline std::optional<double> analytic_value(const RunConfig& cfg, int atoms, MomentumIndex kin,
                                            MomentumIndex kout, double dt) {
  if (cfg.U != 0.0) return std::nullopt;
  const LatticeSpec spec = cfg.lattice();
  const double n = atoms;
  switch (cfg.scenario) {
    case ScenarioType::superfluid:
      return analytic::emission_superfluid(atoms, kin, kout);
    case ScenarioType::mott_sudden:
      if (kin != kout) return 0.0;
      return n * n * std::norm(analytic::reduction_j(cfg.J, dt, kin, spec));
    case ScenarioType::mixture:
      if (kin != kout) return 0.0;
      return analytic::emission_mixture({cfg.N1, cfg.N2}, cfg.J, dt, kin, spec);
    default:
      return std::nullopt;
  }
}

/// Rows for every (kin, dt) pair, kin-major, then dt, then kout in grid order
/// when `map` is set.
inline std::vector<EmissionResult> probe_points(const RunConfig& cfg, const std::vector<MomentumIndex>& kins,
                                                const std::vector<double>& dts, bool map,
                                                PropagatorOptions opts) {
  const PreparedScenario prepared = prepare_scenario(cfg);
  const BasisPtr& ground = prepared.ground;
  const ManyBodyState& psi0 = prepared.psi0;
  const EmissionProbe probe(ground, {cfg.J, cfg.U, cfg.cb_interaction}, opts);
  const LatticeSpec& spec = probe.spec();
  const auto grid = momentum_grid(spec);
  const std::size_t per = map ? grid.size() : 1;
  std::vector<EmissionResult> rows(kins.size() * dts.size() * per);
  parallel_for(kins.size() * dts.size(), [&](std::size_t p) {
    const MomentumIndex kin = spec.canonical(kins[p / dts.size()]);
    const double dt = dts[p % dts.size()];
    std::vector<double> values;
    if (map) {
      values = probe.map(psi0, kin, dt);
    } else {
      values = {probe.probability(psi0, kin, kin, dt)};
    }
    for (std::size_t j = 0; j < per; ++j) {
      const MomentumIndex kout = map ? grid[j] : kin;
      if (!std::isfinite(values[j]) || values[j] < 0.0) {
        throw NumericalError("non-finite emission probability at dt=" + std::to_string(dt));
      }
      rows[p * per + j] = {kin, kout, dt, values[j], analytic_value(cfg, ground->Nb(), kin, kout, dt),
                           to_string(cfg.scenario), std::nullopt};
    }
  });
  return rows;
}

inline std::vector<EmissionResult> adiabatic_points(const RunConfig& cfg, const std::vector<MomentumIndex>& kins,
                                                    const std::vector<double>& durations,
                                                    PropagatorOptions opts) {
  const LatticeSpec spec = cfg.lattice();
  std::vector<EmissionResult> rows(kins.size() * durations.size());
  parallel_for(rows.size(), [&](std::size_t p) {
    RampSchedule sched = cfg.ramp;
    sched.duration = durations[p % durations.size()];
    sched.validate();
    rows[p] = scenario_adiabatic(spec, sched, kins[p / durations.size()], cfg.cb_interaction, opts).forward;
  });
  return rows;
}

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

/// `run`: dt-major rows in dt_list order, then kout in grid order.
inline std::vector<EmissionResult> run_scenario(const RunConfig& cfg, PropagatorOptions opts = {}) {
  if (cfg.scenario == ScenarioType::adiabatic) {
    return detail::adiabatic_points(cfg, {cfg.kappa_in}, {cfg.ramp.duration}, opts);
  }
  return detail::probe_points(cfg, {cfg.kappa_in}, cfg.dt_list, cfg.map_kappa_out, opts);
}

/// One forward row per point, ordered along the axis. The kappa axis walks
/// the momentum grid (times the sorted dt_list, or the ramp duration).
inline std::vector<EmissionResult> run_sweep(const RunConfig& cfg, SweepAxis axis, PropagatorOptions opts = {}) {
  const bool adiabatic = cfg.scenario == ScenarioType::adiabatic;
  switch (axis) {
    case SweepAxis::dt:
      if (adiabatic) throw ConfigError("scenario.type: --axis dt needs a probe scenario, not adiabatic");
      return detail::probe_points(cfg, {cfg.kappa_in}, detail::sorted(cfg.dt_list), false, opts);
    case SweepAxis::ramp_duration:
      if (!adiabatic) throw ConfigError("scenario.type: --axis ramp_duration needs scenario.type = adiabatic");
      if (cfg.sweep_ramp_durations.empty()) {
        throw ConfigError("missing required key: sweep.ramp_durations (needed by --axis ramp_duration)");
      }
      return detail::adiabatic_points(cfg, {cfg.kappa_in}, detail::sorted(cfg.sweep_ramp_durations), opts);
    case SweepAxis::kappa: {
      const auto grid = momentum_grid(cfg.lattice());
      if (adiabatic) return detail::adiabatic_points(cfg, grid, {cfg.ramp.duration}, opts);
      return detail::probe_points(cfg, grid, detail::sorted(cfg.dt_list), false, opts);
    }
  }
  throw InvalidArgument("unknown sweep axis");
}

/// %.17g: enough digits to parse back to the identical double.
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_csv(const RunConfig& cfg, const std::vector<EmissionResult>& rows) {
  const bool with_fidelity = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.fidelity.has_value(); });
  std::ostringstream os;
  os << "scenario,Lx,Ly,J,U,kin_nx,kin_ny,kout_nx,kout_ny,dt,P_rel,P_analytic";
  if (with_fidelity) os << ",fidelity";
  os << '\n';
  for (const auto& r : rows) {
    os << r.scenario << ',' << cfg.Lx << ',' << cfg.Ly << ',' << format_real(cfg.J) << ',' << format_real(cfg.U)
       << ',' << r.kappa_in.nx << ',' << r.kappa_in.ny << ',' << r.kappa_out.nx << ',' << r.kappa_out.ny << ','
       << format_real(r.dt) << ',' << format_real(r.P_rel) << ',';
    if (r.analytic_P) os << format_real(*r.analytic_P);
    if (with_fidelity) {
      os << ',';
      if (r.fidelity) os << format_real(*r.fidelity);
    }
    os << '\n';
  }
  return os.str();
}

inline std::string format_json(const RunConfig& cfg, const std::vector<EmissionResult>& rows) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["scenario"] = r.scenario;
    row["Lx"] = cfg.Lx;
    row["Ly"] = cfg.Ly;
    row["J"] = cfg.J;
    row["U"] = cfg.U;
    row["kin_nx"] = r.kappa_in.nx;
    row["kin_ny"] = r.kappa_in.ny;
    row["kout_nx"] = r.kappa_out.nx;
    row["kout_ny"] = r.kappa_out.ny;
    row["dt"] = r.dt;
    row["P_rel"] = r.P_rel;
    row["P_analytic"] = r.analytic_P ? nlohmann::ordered_json(*r.analytic_P) : nlohmann::ordered_json();
    if (r.fidelity) row["fidelity"] = *r.fidelity;
    out.push_back(std::move(row));
  }
  return out.dump(2) + "\n";
}

inline std::string format_rows(const RunConfig& cfg, const std::vector<EmissionResult>& rows) {
  return cfg.format == OutputFormat::json ? format_json(cfg, rows) : format_csv(cfg, rows);
}

}  // namespace dicke

#endif  // DICKE_RUNNER_HPP
