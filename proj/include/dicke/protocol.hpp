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

#ifndef DICKE_PROTOCOL_HPP
#define DICKE_PROTOCOL_HPP

// Absorb-wait-emit probe. A photon with wave number kappa_in is absorbed at
// t = 0 by A(kappa_in), the excited sector evolves for dt, and a photon with
// kappa_out is emitted by A(kappa_out)^+. The reported probability
//   P_rel = |A(kappa_out)^+ exp(-iH dt) A(kappa_in) |psi0>|^2
// is in units of the single-atom value, which is exactly 1.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dicke/analytic.hpp"
#include "dicke/dynamics.hpp"
#include "dicke/error.hpp"
#include "dicke/fock.hpp"
#include "dicke/lattice.hpp"
#include "dicke/parallel.hpp"

namespace dicke {

struct EmissionResult {
  MomentumIndex kappa_in;
  MomentumIndex kappa_out;
  double dt = 0.0;
  double P_rel = 0.0;
  std::optional<double> analytic_P;
  std::string scenario;
  /// Only set by the adiabatic scenario.
  std::optional<double> fidelity;
};

/// Finite mixture of pure states.
struct Ensemble {
  std::vector<std::pair<double, ManyBodyState>> members;

  void validate() const {
    if (members.empty()) throw InvalidArgument("empty ensemble");
    double total = 0.0;
    for (const auto& [w, psi] : members) {
      if (!(w >= 0.0)) throw InvalidArgument("ensemble weights must be >= 0");
      if (!members.front().second.basis->compatible(*psi.basis)) {
        throw SectorMismatch("ensemble members must share one sector");
      }
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("ensemble weights must sum to 1");
  }
};

// ---------------------------------------------------------------------------
// State preparation

namespace detail {

inline void require_sector(const FockBasis& b, Sector want, const char* what) {
  if (!(b.sector() == want)) {
    throw SectorMismatch(std::string(what) + " needs sector " + to_string(want) + ", got " +
                         to_string(b.sector()));
  }
}

inline int unit_filling(const FockBasis& b) { return static_cast<int>(b.num_sites()); }

/// Applies mode creation operators to the vacuum, in order, and returns the
/// normalized result expressed in `target`.
inline ManyBodyState create_modes(const BasisPtr& target,
                                  const std::vector<std::pair<Species, MomentumIndex>>& ops) {
  const auto& spec = target->spec();
  auto basis = FockBasis::build(spec, 0, 0);
  ManyBodyState psi(basis, Eigen::VectorXcd::Ones(1));
  for (const auto& [s, k] : ops) {
    const int nb = basis->Nb() + (s == Species::ground ? 1 : 0);
    const int nc = basis->Nc() + (s == Species::excited ? 1 : 0);
    auto next = (nb == target->Nb() && nc == target->Nc()) ? target : FockBasis::build(spec, nb, nc);
    psi = apply(creation_operator(basis, next, s, k), psi);
    basis = std::move(next);
  }
  require_same_sector(*target, *basis, "create_modes");
  return ManyBodyState(target, psi.amplitudes).normalized();
}

}  // namespace detail

/// One atom per site.
inline ManyBodyState prepare_mott(const BasisPtr& basis) {
  const int n = detail::unit_filling(*basis);
  detail::require_sector(*basis, {n, 0}, "prepare_mott");
  std::vector<std::uint16_t> ones(basis->num_sites(), 1), zeros(basis->num_sites(), 0);
  auto psi = ManyBodyState::zero(basis);
  psi.amplitudes[static_cast<Eigen::Index>(basis->index_of(ones, zeros))] = 1.0;
  return psi;
}

/// (sum_mu b+_mu)^N |0>, normalized: amplitude sqrt(N! / prod_mu n_mu!) N^{-N/2}.
inline ManyBodyState prepare_superfluid(const BasisPtr& basis) {
  const int n = detail::unit_filling(*basis);
  detail::require_sector(*basis, {n, 0}, "prepare_superfluid");
  auto psi = ManyBodyState::zero(basis);
  const double base = std::lgamma(n + 1.0) - n * std::log(static_cast<double>(n));
  for (std::size_t i = 0; i < basis->dimension(); ++i) {
    double log_amp = base;
    for (auto occ : basis->ground(i)) log_amp -= std::lgamma(occ + 1.0);
    psi.amplitudes[static_cast<Eigen::Index>(i)] = std::exp(0.5 * log_amp);
  }
  return psi.normalized();
}

/// prod_k (b+_k)^{m_k} |0>, normalized, for the listed (mode, multiplicity)
/// pairs. Multiplicities must add up to the sector's Nb (with Nc = 0).
inline ManyBodyState prepare_momentum_fock(const BasisPtr& basis,
                                           const std::vector<std::pair<MomentumIndex, int>>& modes) {
  int total = 0;
  std::vector<std::pair<Species, MomentumIndex>> ops;
  for (const auto& [k, m] : modes) {
    if (m < 0) throw InvalidArgument("mode multiplicities must be >= 0");
    total += m;
    for (int j = 0; j < m; ++j) ops.emplace_back(Species::ground, basis->spec().canonical(k));
  }
  if (basis->Nc() != 0 || total != basis->Nb()) {
    throw InvalidArgument("prepare_momentum_fock: multiplicities sum to " + std::to_string(total) +
                          " but sector is " + to_string(basis->sector()));
  }
  return detail::create_modes(basis, ops);
}

/// (1/sqrt N) sum_mu exp(i kappa r_mu) |c at mu, one b on every other site>.
inline ManyBodyState prepare_excited_mott(const BasisPtr& basis, MomentumIndex kappa_in) {
  const int n = detail::unit_filling(*basis);
  detail::require_sector(*basis, {n - 1, 1}, "prepare_excited_mott");
  const auto& spec = basis->spec();
  auto psi = ManyBodyState::zero(basis);
  std::vector<std::uint16_t> b(basis->num_sites(), 1), c(basis->num_sites(), 0);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t mu = 0; mu < basis->num_sites(); ++mu) {
    b[mu] = 0;
    c[mu] = 1;
    psi.amplitudes[static_cast<Eigen::Index>(basis->index_of(b, c))] = norm * spec.plane_wave(kappa_in, mu);
    b[mu] = 1;
    c[mu] = 0;
  }
  return psi;
}

/// (b+_{k=0})^{N-1} c+_{kappa_in} |0>, normalized.
inline ManyBodyState prepare_excited_superfluid(const BasisPtr& basis, MomentumIndex kappa_in) {
  const int n = detail::unit_filling(*basis);
  detail::require_sector(*basis, {n - 1, 1}, "prepare_excited_superfluid");
  std::vector<std::pair<Species, MomentumIndex>> ops(static_cast<std::size_t>(n - 1),
                                                     {Species::ground, MomentumIndex{0, 0}});
  ops.emplace_back(Species::excited, basis->spec().canonical(kappa_in));
  return detail::create_modes(basis, ops);
}

/// Pure-state realization of the partial condensate: N1 atoms in k = 0 and
/// one atom in each of the first N2 nonzero modes in grid order.
inline std::vector<std::pair<MomentumIndex, int>> mixture_modes(const LatticeSpec& spec,
                                                                const analytic::MixtureSpec& mix) {
  const auto n = static_cast<int>(spec.num_sites());
  if (mix.N1 < 0 || mix.N2 < 0 || mix.N1 + mix.N2 < 1) {
    throw InvalidArgument("mixture needs N1, N2 >= 0 and N1 + N2 >= 1");
  }
  if (mix.N2 >= n) {
    throw InvalidArgument("mixture needs N2 < number of sites (" + std::to_string(n) + ")");
  }
  std::vector<std::pair<MomentumIndex, int>> modes;
  if (mix.N1 > 0) modes.emplace_back(MomentumIndex{0, 0}, mix.N1);
  for (int i = 1; i <= mix.N2; ++i) modes.emplace_back(spec.mode_at(static_cast<std::size_t>(i)), 1);
  return modes;
}

// ---------------------------------------------------------------------------
// Probe

/// Everything needed to probe states of one ground sector (Nb, 0) under a
/// fixed Hamiltonian: both bases, the absorption operator for every grid
/// mode, and the excited-sector propagator. Immutable once built, so one
/// probe can serve concurrent evaluations.
class EmissionProbe {
 public:
  EmissionProbe(const BasisPtr& ground, const BHParams& params, PropagatorOptions opts = {})
      : ground_(ground) {
    if (ground->Nc() != 0 || ground->Nb() < 1) {
      throw SectorMismatch("probe needs a ground sector (Nb >= 1, Nc = 0), got " + to_string(ground->sector()));
    }
    excited_ = FockBasis::build(ground->spec(), ground->Nb() - 1, 1);
    for (const auto& k : momentum_grid(ground->spec())) {
      absorb_.push_back(absorption_operator(ground_, excited_, k));
      emit_.push_back(absorb_.back().adjoint());
    }
    propagator_.emplace(hamiltonian(excited_, params), opts);
  }

  const BasisPtr& ground_basis() const { return ground_; }
  const BasisPtr& excited_basis() const { return excited_; }
  const LatticeSpec& spec() const { return ground_->spec(); }

  ManyBodyState absorb(const ManyBodyState& psi0, MomentumIndex k) const {
    return apply(absorb_[spec().grid_index(k)], psi0);
  }
  ManyBodyState evolve(const ManyBodyState& excited, double dt) const {
    return propagator_->evolve(excited, dt);
  }
  double emit(const ManyBodyState& excited, MomentumIndex k) const {
    return apply(emit_[spec().grid_index(k)], excited).amplitudes.squaredNorm();
  }

  double probability(const ManyBodyState& psi0, MomentumIndex kin, MomentumIndex kout, double dt) const {
    require_same_sector(*ground_, *psi0.basis, "emission_probability");
    return emit(evolve(absorb(psi0, kin), dt), kout);
  }

  /// P_rel for every grid kappa_out, in grid order; the evolved state is
  /// shared across all of them.
  std::vector<double> map(const ManyBodyState& psi0, MomentumIndex kin, double dt) const {
    require_same_sector(*ground_, *psi0.basis, "emission_map");
    const auto evolved = evolve(absorb(psi0, kin), dt);
    std::vector<double> out;
    out.reserve(emit_.size());
    for (const auto& e : emit_) out.push_back(apply(e, evolved).amplitudes.squaredNorm());
    return out;
  }

  /// |<psi0| A^dag(kout) e^{-iH dt} A(kin) |psi0>|^2: the part of P_rel that
  /// returns the lattice to its initial state. P_rel minus this is emission
  /// with atomic recoil, which is not momentum selective (O(N) off-forward).
  double coherent_probability(const ManyBodyState& psi0, MomentumIndex kin, MomentumIndex kout,
                              double dt) const {
    require_same_sector(*ground_, *psi0.basis, "coherent_probability");
    const auto evolved = evolve(absorb(psi0, kin), dt);
    const auto back = apply(emit_[spec().grid_index(kout)], evolved);
    return std::norm(psi0.amplitudes.dot(back.amplitudes));
  }

  double probability(const Ensemble& ens, MomentumIndex kin, MomentumIndex kout, double dt) const {
    ens.validate();
    double p = 0.0;
    for (const auto& [w, psi] : ens.members) p += w * probability(psi, kin, kout, dt);
    return p;
  }

 private:
  BasisPtr ground_;
  BasisPtr excited_;
  std::vector<SparseOperator> absorb_;
  std::vector<SparseOperator> emit_;
  std::optional<StaticPropagator> propagator_;
};

namespace detail {

inline void require_excited_hamiltonian(const ManyBodyState& psi0, const SparseOperator& H) {
  const Sector s = psi0.sector();
  if (s.Nc != 0 || s.Nb < 1) throw SectorMismatch("initial state must be in a sector (Nb >= 1, Nc = 0)");
  if (!(H.domain->spec() == psi0.basis->spec()) || !(H.domain->sector() == Sector{s.Nb - 1, 1})) {
    throw SectorMismatch("Hamiltonian must act on the excited sector " + to_string({s.Nb - 1, 1}));
  }
}

}  // namespace detail

/// Single-point probe; H is the Hamiltonian of the excited sector (Nb-1, 1).
inline EmissionResult emission_probability(const ManyBodyState& psi0, MomentumIndex kin,
                                           MomentumIndex kout, double dt, const SparseOperator& H,
                                           PropagatorOptions opts = {}) {
  detail::require_excited_hamiltonian(psi0, H);
  const auto absorbed = apply(absorption_operator(psi0.basis, H.domain, kin), psi0);
  const auto evolved = evolve_static(absorbed, H, dt, opts);
  const auto emitted = apply(absorption_operator(psi0.basis, H.domain, kout).adjoint(), evolved);
  return {kin, kout, dt, emitted.amplitudes.squaredNorm(), std::nullopt, "custom", std::nullopt};
}

inline EmissionResult emission_probability(const Ensemble& ens, MomentumIndex kin, MomentumIndex kout,
                                           double dt, const SparseOperator& H, PropagatorOptions opts = {}) {
  ens.validate();
  EmissionResult out{kin, kout, dt, 0.0, std::nullopt, "custom", std::nullopt};
  for (const auto& [w, psi] : ens.members) out.P_rel += w * emission_probability(psi, kin, kout, dt, H, opts).P_rel;
  return out;
}

/// One result per grid kappa_out, in grid order.
inline std::vector<EmissionResult> emission_map(const ManyBodyState& psi0, MomentumIndex kin, double dt,
                                                const SparseOperator& H, PropagatorOptions opts = {}) {
  detail::require_excited_hamiltonian(psi0, H);
  const auto& spec = psi0.basis->spec();
  const auto evolved = evolve_static(apply(absorption_operator(psi0.basis, H.domain, kin), psi0), H, dt, opts);
  std::vector<EmissionResult> out;
  for (const auto& kout : momentum_grid(spec)) {
    const auto emitted = apply(absorption_operator(psi0.basis, H.domain, kout).adjoint(), evolved);
    out.push_back({spec.canonical(kin), kout, dt, emitted.amplitudes.squaredNorm(), std::nullopt, "custom",
                   std::nullopt});
  }
  return out;
}

/// |A(kappa_out)^+ psi|^2 for a state already in an excited sector (Nb, 1).
inline double emission_only(const ManyBodyState& excited, MomentumIndex kout) {
  const Sector s = excited.sector();
  if (s.Nc != 1) throw SectorMismatch("emission_only needs one excited atom, got " + to_string(s));
  const auto ground = FockBasis::build(excited.basis->spec(), s.Nb + 1, 0);
  const auto emit = absorption_operator(ground, excited.basis, kout).adjoint();
  return apply(emit, excited).amplitudes.squaredNorm();
}

// ---------------------------------------------------------------------------
// Scenarios

/// Mott state, absorb, then evolve under (J_final, U_final) and emit forward.
/// analytic_P = N^2 |J(dt)|^2 is attached when U_final = 0.
inline std::vector<EmissionResult> scenario_sudden_quench(const LatticeSpec& spec, double J_final,
                                                          MomentumIndex kin, const std::vector<double>& dt_list,
                                                          double U_final = 0.0, PropagatorOptions opts = {}) {
  const int n = static_cast<int>(spec.num_sites());
  const auto ground = FockBasis::build(spec, n, 0);
  const EmissionProbe probe(ground, {J_final, U_final, 1.0}, opts);
  const auto mott = prepare_mott(ground);
  kin = spec.canonical(kin);
  std::vector<EmissionResult> out(dt_list.size());
  parallel_for(dt_list.size(), [&](std::size_t i) {
    const double dt = dt_list[i];
    EmissionResult r{kin, kin, dt, probe.probability(mott, kin, kin, dt), std::nullopt, "mott_sudden", std::nullopt};
    if (U_final == 0.0) r.analytic_P = static_cast<double>(n) * n * std::norm(analytic::reduction_j(J_final, dt, kin, spec));
    out[i] = r;
  });
  return out;
}

struct AdiabaticResult {
  double fidelity = 0.0;
  EmissionResult forward;
};

/// Evolves the excited Mott state along the ramp and compares it with the
/// excited condensate; the forward emission of the ramped state is reported
/// with dt = ramp duration and analytic value N.
inline AdiabaticResult scenario_adiabatic(const LatticeSpec& spec, const RampSchedule& sched, MomentumIndex kin,
                                          double cb_interaction = 1.0, PropagatorOptions opts = {}) {
  const int n = static_cast<int>(spec.num_sites());
  kin = spec.canonical(kin);
  const auto excited = FockBasis::build(spec, n - 1, 1);
  const auto start = prepare_excited_mott(excited, kin);
  const auto target = prepare_excited_superfluid(excited, kin);
  const auto ramped = evolve_ramp(start, sched, cb_interaction, opts);
  AdiabaticResult r;
  r.fidelity = fidelity(ramped, target);
  r.forward = {kin, kin, sched.duration, emission_only(ramped, kin), static_cast<double>(n), "adiabatic", r.fidelity};
  return r;
}

}  // namespace dicke

#endif  // DICKE_PROTOCOL_HPP
