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

#ifndef DICKE_VALIDATE_HPP
#define DICKE_VALIDATE_HPP

// Self-validation suite behind `dicke-probe validate`: one line per
// criterion, fixed sizes, fixed seeds, no timing in the output.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dicke/analytic.hpp"
#include "dicke/dynamics.hpp"
#include "dicke/fock.hpp"
#include "dicke/lattice.hpp"
#include "dicke/parallel.hpp"
#include "dicke/protocol.hpp"

namespace dicke::validate {

using ReductionFn = std::function<cplx(double J, double dt, MomentumIndex kappa, const LatticeSpec& spec)>;

struct Options {
  // Every analytic J(dt) used by the suite goes through here, so a harness
  // can substitute a broken one.
  ReductionFn reduction = analytic::reduction_j;
};

struct Criterion {
  std::string id;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<Criterion> criteria;
  std::vector<std::string> notes;

  bool passed() const {
    for (const auto& c : criteria) {
      if (!c.passed) return false;
    }
    return true;
  }
  int exit_code() const { return passed() ? 0 : 3; }

  const Criterion* find(const std::string& id) const {
    for (const auto& c : criteria) {
      if (c.id == id) return &c;
    }
    return nullptr;
  }

  std::string text() const {
    std::string out;
    int ok = 0;
    for (const auto& c : criteria) {
      out += c.id + (c.passed ? " PASS " : " FAIL ") + c.detail + "\n";
      ok += c.passed;
    }
    for (const auto& n : notes) out += "NOTE " + n + "\n";
    out += "SUMMARY " + std::to_string(ok) + "/" + std::to_string(criteria.size()) + " passed\n";
    return out;
  }
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

inline std::string yes(bool b) { return b ? "ok" : "VIOLATED"; }

// Bits of mt19937_64 mapped to [0, 1) by hand; the standard distributions are
// not pinned across library versions.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
};

inline ManyBodyState random_state(const BasisPtr& basis, Rng& rng) {
  auto psi = ManyBodyState::zero(basis);
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    psi.amplitudes[i] = {rng.uniform() - 0.5, rng.uniform() - 0.5};
  }
  return psi.normalized();
}

// Power series sum (-x^2/4)^m / (m!)^2 to full long-double precision.
inline double j0_series_oracle(double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<long double>(m) * m);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

inline int sites(const LatticeSpec& s) { return static_cast<int>(s.num_sites()); }

}  // namespace detail

/// A1: pure condensate at U = 0, forward N^2 for every kin and dt, and the
/// stated off-forward bound.
inline Criterion check_a1(const Options&) {
  const std::vector<LatticeSpec> shapes{LatticeSpec(2, 1), LatticeSpec(2, 2), LatticeSpec(4, 1), LatticeSpec(6, 1)};
  std::vector<double> fwd(shapes.size(), 0.0), off(shapes.size(), 0.0), off_vs_n(shapes.size(), 0.0),
      coherent(shapes.size(), 0.0);
  parallel_for(shapes.size(), [&](std::size_t s) {
    const auto& spec = shapes[s];
    const int n = detail::sites(spec);
    const auto g = FockBasis::build(spec, n, 0);
    const EmissionProbe probe(g, {1.0, 0.0});
    const auto sf = prepare_superfluid(g);
    for (const auto& kin : momentum_grid(spec)) {
      for (double dt : {0.0, 1.0, 5.0, 10.0}) {
        const auto map = probe.map(sf, kin, dt);
        for (std::size_t j = 0; j < map.size(); ++j) {
          const auto kout = spec.mode_at(j);
          if (kout == kin) {
            fwd[s] = std::max(fwd[s], std::abs(map[j] - static_cast<double>(n) * n));
          } else {
            off[s] = std::max(off[s], map[j]);
            off_vs_n[s] = std::max(off_vs_n[s], std::abs(map[j] - n));
            coherent[s] = std::max(coherent[s], probe.coherent_probability(sf, kin, kout, dt));
          }
        }
      }
    }
  });
  double f = 0, o = 0, on = 0, c = 0;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    f = std::max(f, fwd[s]);
    o = std::max(o, off[s]);
    on = std::max(on, off_vs_n[s]);
    c = std::max(c, coherent[s]);
  }
  const bool pass_f = f <= 1e-8;
  const bool pass_o = o <= 1e-10;
  return {"A1", pass_f && pass_o,
          "lattices 2x1,2x2,4x1,6x1 dt*J in {0,1,5,10}: max|P_fwd-N^2|=" + detail::num(f) + " (<=1e-8 " +
              detail::yes(pass_f) + "); max P_off=" + detail::num(o) + " (<=1e-10 " + detail::yes(pass_o) +
              "); max|P_off-N|=" + detail::num(on) + " (recoil term N*S(q)); max coherent P_off=" +
              detail::num(c)};
}

/// A2: P(dt = 0, forward) = N^2 for Mott, condensate and a momentum-Fock state.
inline Criterion check_a2(const Options&) {
  double worst = 0.0;
  int cases = 0;
  for (const auto& spec : {LatticeSpec(3, 1), LatticeSpec(4, 1), LatticeSpec(2, 2), LatticeSpec(6, 1)}) {
    const int n = detail::sites(spec);
    const auto g = FockBasis::build(spec, n, 0);
    const EmissionProbe probe(g, {1.0, 1.0});
    const std::vector<std::pair<MomentumIndex, int>> modes{
        {{0, 0}, n - 2}, {spec.mode_at(1), 1}, {spec.mode_at(2), 1}};
    for (const auto& psi : {prepare_mott(g), prepare_superfluid(g), prepare_momentum_fock(g, modes)}) {
      for (const auto& k : momentum_grid(spec)) {
        worst = std::max(worst, std::abs(probe.probability(psi, k, k, 0.0) - static_cast<double>(n) * n));
        ++cases;
      }
    }
  }
  return {"A2", worst <= 1e-10,
          std::to_string(cases) + " cases (Mott, condensate, momentum-Fock; N=3..6): max|P-N^2|=" + detail::num(worst) +
              " (<=1e-10)"};
}

/// A3: J(0) = 1 exactly, |J| <= 1 on random samples, two-site closed form.
inline Criterion check_a3(const Options& opt) {
  const std::vector<LatticeSpec> shapes{LatticeSpec(2, 1), LatticeSpec(5, 1), LatticeSpec(8, 1),
                                        LatticeSpec(2, 2), LatticeSpec(3, 4), LatticeSpec(6, 6)};
  bool exact_one = true;
  for (const auto& spec : shapes) {
    for (const auto& k : momentum_grid(spec)) exact_one = exact_one && opt.reduction(1.0, 0.0, k, spec) == cplx(1.0, 0.0);
  }
  detail::Rng rng(20260415);
  double biggest = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto& spec = shapes[rng.below(shapes.size())];
    const auto k = spec.mode_at(rng.below(spec.num_sites()));
    const double J = 0.1 + 1.9 * rng.uniform();
    const double dt = 10.0 / J * rng.uniform();
    biggest = std::max(biggest, std::abs(opt.reduction(J, dt, k, spec)));
  }
  double two_site = 0.0;
  const LatticeSpec pair(2, 1);
  for (int i = 0; i <= 1000; ++i) {
    const double dt = 0.01 * i;
    two_site = std::max(two_site, std::abs(opt.reduction(1.0, dt, {1, 0}, pair) - std::cos(2.0 * dt)));
  }
  const bool bounded = biggest <= 1.0 + 1e-12;
  return {"A3", exact_one && bounded && two_site <= 1e-12,
          std::string("J(0)==1 exactly: ") + detail::yes(exact_one) + "; max|J| over 1000 samples=" +
              detail::num(biggest) + " (<=1+1e-12 " + detail::yes(bounded) + "); L=2 max|J-cos(2J dt)|=" +
              detail::num(two_site) + " (<=1e-12)"};
}

/// A4: sudden quench vs N^2 |J|^2, relative deviation strictly decreasing in N.
inline Criterion check_a4(const Options& opt) {
  const std::vector<int> sizes{4, 6, 8};
  const std::vector<double> jdts{0.5, 1.0, 2.0};
  std::vector<std::vector<double>> dev(sizes.size(), std::vector<double>(jdts.size()));
  parallel_for(sizes.size(), [&](std::size_t a) {
    const LatticeSpec spec(sizes[a], 1);
    const auto g = FockBasis::build(spec, sizes[a], 0);
    const EmissionProbe probe(g, {1.0, 0.0});
    const auto mott = prepare_mott(g);
    const double n2 = static_cast<double>(sizes[a]) * sizes[a];
    for (std::size_t b = 0; b < jdts.size(); ++b) {
      const double p = probe.probability(mott, {1, 0}, {1, 0}, jdts[b]);
      dev[a][b] = std::abs(p - n2 * std::norm(opt.reduction(1.0, jdts[b], {1, 0}, spec))) / n2;
    }
  });
  bool ok = true;
  std::string detail;
  for (std::size_t b = 0; b < jdts.size(); ++b) {
    detail += (b ? "; " : "") + std::string("J*dt=") + detail::num(jdts[b]) + ":";
    for (std::size_t a = 0; a < sizes.size(); ++a) {
      ok = ok && std::isfinite(dev[a][b]);
      if (a > 0) ok = ok && dev[a][b] < dev[a - 1][b];
      detail += " N" + std::to_string(sizes[a]) + "=" + detail::num(dev[a][b]);
    }
  }
  return {"A4", ok, "relative deviation, strictly decreasing in N: " + detail};
}

/// A5: finite-chain J converges to the Bessel limit; J0 against its series.
inline Criterion check_a5(const Options& opt) {
  std::vector<double> worst;
  for (int L : {16, 32, 64}) {
    const LatticeSpec chain(L, 1);
    const double kappa = chain.wave_vector({1, 0})[0];
    double w = 0.0;
    for (int i = 0; i <= 500; ++i) {
      const double dt = 2.0 * (0.01 * i) / kappa;  // J dt kappa l / 2 = 0.01 i
      w = std::max(w, std::abs(opt.reduction(1.0, dt, {1, 0}, chain) -
                               analytic::reduction_j_bessel(1.0, dt, kappa, 0.0, chain.spacing(), 1)));
    }
    worst.push_back(w);
  }
  double j0_err = 0.0;
  for (double x : {0.0, 1.0, 2.404825557695773, 10.0}) {
    j0_err = std::max(j0_err, std::abs(analytic::bessel_j0(x) - detail::j0_series_oracle(x)));
  }
  const bool mono = worst[1] < worst[0] && worst[2] < worst[1];
  const bool factor = 2.0 * worst[2] <= worst[0];
  return {"A5", mono && factor && j0_err <= 1e-10,
          "chain (J0 argument J dt kappa l): max dev L16=" + detail::num(worst[0]) + " L32=" + detail::num(worst[1]) +
              " L64=" + detail::num(worst[2]) + " monotone " + detail::yes(mono) + ", L16/L64=" +
              detail::num(worst[0] / worst[2]) + " (>=2 " + detail::yes(factor) + "); J0 vs series max err=" +
              detail::num(j0_err) + " (<=1e-10)"};
}

/// A6: emission from the Eq. 13 state; N forward, stated off-forward bound.
inline Criterion check_a6(const Options&) {
  double fwd = 0.0, off = 0.0, off_vs_one = 0.0;
  for (const auto& spec : {LatticeSpec(2, 1), LatticeSpec(3, 1), LatticeSpec(4, 1), LatticeSpec(5, 1),
                           LatticeSpec(6, 1), LatticeSpec(2, 2), LatticeSpec(3, 2)}) {
    const int n = detail::sites(spec);
    const auto e = FockBasis::build(spec, n - 1, 1);
    for (const auto& k : momentum_grid(spec)) {
      const auto psi = prepare_excited_superfluid(e, k);
      for (const auto& kout : momentum_grid(spec)) {
        const double p = emission_only(psi, kout);
        if (kout == k) {
          fwd = std::max(fwd, std::abs(p - n));
        } else {
          off = std::max(off, p);
          off_vs_one = std::max(off_vs_one, std::abs(p - 1.0));
        }
      }
    }
  }
  const bool pass_f = fwd <= 1e-10;
  const bool pass_o = off <= 1e-10;
  return {"A6", pass_f && pass_o,
          "N=2..6: max|P_fwd-N|=" + detail::num(fwd) + " (<=1e-10 " + detail::yes(pass_f) + "); max P_off=" +
              detail::num(off) + " (<=1e-10 " + detail::yes(pass_o) + "); max|P_off-1|=" + detail::num(off_vs_one) +
              " (single recoiling atom)"};
}

inline RampSchedule a7_ramp(double duration) {
  // (J, U) = (0.02, 1) -> (1, 0); 20 slices per unit time, at least 200.
  return {duration, RampProfile::smoothstep, 0.02, 1.0, 1.0, 0.0,
          std::max(200, static_cast<int>(std::lround(20.0 * duration)))};
}

/// A7: adiabatic passage on the L = 4 chain. Uses kappa_in = 0; at nonzero
/// kappa the symmetric interaction caps the fidelity at 1 - 1/N (reported as
/// a note by run()).
inline Criterion check_a7(const Options&) {
  const LatticeSpec spec(4, 1);
  const std::vector<double> durations{1.0, 10.0, 100.0};
  std::vector<double> fid(durations.size());
  parallel_for(durations.size(), [&](std::size_t i) {
    fid[i] = scenario_adiabatic(spec, a7_ramp(durations[i]), {0, 0}).fidelity;
  });
  bool ordered = true;
  double best = 0.0;
  std::string detail = "L=4 kappa_in=0 smoothstep:";
  for (std::size_t i = 0; i < durations.size(); ++i) {
    detail += " F(T=" + detail::num(durations[i]) + ")=" + detail::num(fid[i]);
    if (i > 0) ordered = ordered && fid[i] > fid[i - 1];
    best = std::max(best, fid[i]);
  }
  return {"A7", ordered && best > 0.99,
          detail + "; max>0.99 " + detail::yes(best > 0.99) + ", slower pair better " + detail::yes(ordered)};
}

struct InterferencePoint {
  double dt = 0.0;
  double cross = 0.0;
  double baseline = 0.0;
  double ed = 0.0;
};

inline InterferencePoint interference_at_minimum(const Options& opt, MomentumIndex kappa) {
  const LatticeSpec spec(6, 1);
  const analytic::MixtureSpec mix{3, 3};
  InterferencePoint best;
  best.cross = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 10000; ++i) {
    const double dt = 1e-3 * i;
    const cplx j = opt.reduction(1.0, dt, kappa, spec);
    const double cross = 2.0 * mix.N1 * mix.N2 *
                         (std::polar(1.0, -analytic::phase_phi(1.0, dt, kappa, spec)) * j).real();
    if (cross < best.cross) {
      best.dt = dt;
      best.cross = cross;
      best.baseline = static_cast<double>(mix.N1) * mix.N1 + static_cast<double>(mix.N2) * mix.N2 * std::norm(j);
    }
  }
  const auto g = FockBasis::build(spec, mix.N1 + mix.N2, 0);
  const auto psi = prepare_momentum_fock(g, mixture_modes(spec, mix));
  best.ed = EmissionProbe(g, {1.0, 0.0}).probability(psi, kappa, kappa, best.dt);
  return best;
}

/// A8: sign of the condensate / thermal interference at the most negative
/// analytic cross term, on the zone-boundary mode kappa = pi / l.
inline Criterion check_a8(const Options& opt) {
  const auto p = interference_at_minimum(opt, {3, 0});
  const double shift = p.ed - p.baseline;
  const bool ok = p.cross != 0.0 && shift != 0.0 && (shift < 0.0) == (p.cross < 0.0);
  return {"A8", ok,
          "L=6 N1=3 N2=3 kappa=pi/l: dt*J=" + detail::num(p.dt) + " cross=" + detail::num(p.cross) +
              " ED-(N1^2+N2^2|J|^2)=" + detail::num(shift) + " (same sign " + detail::yes(ok) + ")"};
}

/// A9: mechanics.
inline Criterion check_a9(const Options&) {
  detail::Rng rng(7);
  double herm = 0.0;
  bool sectors = true;
  double norm_drift = 0.0;
  double adjoint = 0.0;
  const std::vector<std::pair<LatticeSpec, Sector>> cases{{LatticeSpec(4, 1), {3, 1}},
                                                          {LatticeSpec(2, 2), {4, 0}},
                                                          {LatticeSpec(2, 2), {2, 2}},
                                                          {LatticeSpec(6, 1), {5, 1}},
                                                          {LatticeSpec(8, 1), {7, 1}}};
  for (const auto& [spec, sec] : cases) {
    const auto basis = FockBasis::build(spec, sec.Nb, sec.Nc);
    const auto H = hamiltonian(basis, {1.0, 1.3, 1.0});
    herm = std::max(herm, H.hermiticity_defect());
    for (Eigen::Index k = 0; k < H.matrix.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(H.matrix, k); it; ++it) {
        int db = 0, dc = 0;
        for (auto v : basis->ground(static_cast<std::size_t>(it.row()))) db += v;
        for (auto v : basis->excited(static_cast<std::size_t>(it.row()))) dc += v;
        for (auto v : basis->ground(static_cast<std::size_t>(it.col()))) db -= v;
        for (auto v : basis->excited(static_cast<std::size_t>(it.col()))) dc -= v;
        sectors = sectors && db == 0 && dc == 0;
      }
    }
    const auto psi = detail::random_state(basis, rng);
    for (double t : {0.5, 5.0}) norm_drift = std::max(norm_drift, std::abs(evolve_static(psi, H, t).norm() - 1.0));

    if (sec.Nb > 0) {
      const auto out = FockBasis::build(spec, sec.Nb - 1, sec.Nc + 1);
      for (const auto& k : momentum_grid(spec)) {
        const auto A = absorption_operator(basis, out, k);
        const auto phi = detail::random_state(out, rng);
        const auto x = detail::random_state(basis, rng);
        adjoint = std::max(adjoint, std::abs(inner(phi, apply(A, x)) - inner(apply(A.adjoint(), phi), x)));
        for (Eigen::Index r = 0; r < A.matrix.outerSize(); ++r) {
          for (SparseMatrix::InnerIterator it(A.matrix, r); it; ++it) {
            int db = 0, dc = 0;
            for (auto v : out->ground(static_cast<std::size_t>(it.row()))) db += v;
            for (auto v : out->excited(static_cast<std::size_t>(it.row()))) dc += v;
            for (auto v : basis->ground(static_cast<std::size_t>(it.col()))) db -= v;
            for (auto v : basis->excited(static_cast<std::size_t>(it.col()))) dc -= v;
            sectors = sectors && db == -1 && dc == 1;
          }
        }
      }
    }
  }
  const LatticeSpec chain(4, 1);
  const auto e = FockBasis::build(chain, 3, 1);
  const auto ramp = evolve_ramp(detail::random_state(e, rng), a7_ramp(5.0));
  norm_drift = std::max(norm_drift, std::abs(ramp.norm() - 1.0));

  const auto eq12 = prepare_excited_mott(e, {1, 0});
  const double ratio = energy_variance(hamiltonian(e, {0.05, 1.0}), eq12) /
                       energy_variance(hamiltonian(e, {0.025, 1.0}), eq12);
  const bool ok = herm <= 1e-14 && sectors && norm_drift <= 1e-9 && adjoint <= 1e-12 && std::abs(ratio - 4.0) <= 0.4;
  return {"A9", ok,
          "hermiticity defect=" + detail::num(herm) + " (<=1e-14); sectors conserved " + detail::yes(sectors) +
              "; norm drift=" + detail::num(norm_drift) + " (<=1e-9); adjointness=" + detail::num(adjoint) +
              " (<=1e-12); Eq.12 variance ratio J=0.05/0.025 at U=1: " + detail::num(ratio) + " (4+-10%)"};
}

/// Everything `dicke-probe validate` prints.
inline Report run(const Options& opt = {}) {
  Report r;
  r.criteria = {check_a1(opt), check_a2(opt), check_a3(opt), check_a4(opt), check_a5(opt),
                check_a6(opt), check_a7(opt), check_a8(opt), check_a9(opt)};

  // Sensitivity to the c-b interaction, and the pseudospin ceiling at kappa != 0.
  const LatticeSpec spec(4, 1);
  double fid[2];
  for (int i = 0; i < 2; ++i) fid[i] = scenario_adiabatic(spec, a7_ramp(100.0), {1, 0}, i == 0 ? 1.0 : 0.0).fidelity;
  r.notes.push_back("cb_interaction sensitivity (A7 ramp T=100, kappa_in=2pi/4l): F(cb=1)=" + detail::num(fid[0]) +
                    " (ceiling 1-1/N=0.75) F(cb=0)=" + detail::num(fid[1]));
  const auto small = interference_at_minimum(opt, {1, 0});
  r.notes.push_back("A8 at kappa=2pi/6l: dt*J=" + detail::num(small.dt) + " cross=" + detail::num(small.cross) +
                    " ED-(N1^2+N2^2|J|^2)=" + detail::num(small.ed - small.baseline) +
                    " (finite-N terms dominate away from the zone boundary)");
  return r;
}

}  // namespace dicke::validate

#endif  // DICKE_VALIDATE_HPP
