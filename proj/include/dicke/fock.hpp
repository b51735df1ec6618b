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

#ifndef DICKE_FOCK_HPP
#define DICKE_FOCK_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "dicke/error.hpp"
#include "dicke/lattice.hpp"

namespace dicke {

/// Fixed particle numbers of the ground (b) and excited (c) species.
struct Sector {
  int Nb = 0;
  int Nc = 0;

  friend bool operator==(const Sector&, const Sector&) = default;
};

inline std::string to_string(Sector s) {
  return "(Nb=" + std::to_string(s.Nb) + ", Nc=" + std::to_string(s.Nc) + ")";
}

enum class Species { ground, excited };

inline constexpr std::size_t kDefaultDimensionCap = 2'000'000;

namespace detail {

/// Compositions of `total` into `parts` ordered non-negative integers, in
/// descending lexicographic order, with the inverse map (rank).
class CompositionTable {
 public:
  CompositionTable(int total, int parts) : total_(total), parts_(parts) {
    counts_.assign(static_cast<std::size_t>(total + 1) * (parts + 1), 0);
    for (int s = 0; s <= parts; ++s) {
      for (int m = 0; m <= total; ++m) {
        std::uint64_t c = 0;
        if (s == 0) {
          c = (m == 0) ? 1 : 0;
        } else {
          for (int a = 0; a <= m; ++a) c += count(m - a, s - 1);
        }
        counts_[idx(m, s)] = c;
      }
    }
  }

  static long double size_of(int total, int parts) {
    // C(total + parts - 1, parts - 1), evaluated without overflow.
    if (parts == 0) return total == 0 ? 1.0L : 0.0L;
    long double c = 1.0L;
    for (int i = 1; i <= parts - 1; ++i) c = c * (total + i) / i;
    return std::round(c);
  }

  std::uint64_t count(int m, int s) const { return counts_[idx(m, s)]; }
  std::uint64_t size() const { return count(total_, parts_); }

  void enumerate(std::vector<std::uint16_t>& out) const {
    out.clear();
    out.reserve(static_cast<std::size_t>(size()) * parts_);
    std::vector<std::uint16_t> cur(static_cast<std::size_t>(parts_), 0);
    recurse(0, total_, cur, out);
  }

  /// Rank of an occupation vector, or npos if it does not sum to `total`.
  std::uint64_t rank(std::span<const std::uint16_t> occ) const {
    if (static_cast<int>(occ.size()) != parts_) return npos;
    int remaining = total_;
    std::uint64_t r = 0;
    for (int i = 0; i < parts_; ++i) {
      const int n = occ[static_cast<std::size_t>(i)];
      if (n > remaining) return npos;
      for (int a = n + 1; a <= remaining; ++a) r += count(remaining - a, parts_ - i - 1);
      remaining -= n;
    }
    return remaining == 0 ? r : npos;
  }

  static constexpr std::uint64_t npos = std::numeric_limits<std::uint64_t>::max();

 private:
  std::size_t idx(int m, int s) const {
    return static_cast<std::size_t>(s) * (total_ + 1) + static_cast<std::size_t>(m);
  }

  void recurse(int pos, int remaining, std::vector<std::uint16_t>& cur,
               std::vector<std::uint16_t>& out) const {
    if (pos == parts_ - 1) {
      cur[static_cast<std::size_t>(pos)] = static_cast<std::uint16_t>(remaining);
      out.insert(out.end(), cur.begin(), cur.end());
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      cur[static_cast<std::size_t>(pos)] = static_cast<std::uint16_t>(a);
      recurse(pos + 1, remaining - a, cur, out);
    }
  }

  int total_;
  int parts_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace detail

/// Two-species occupation basis of one (Nb, Nc) sector. State i combines the
/// ground-species configuration i / dim_c with the excited configuration
/// i % dim_c; both run in descending lexicographic order, so the whole list is
/// lexicographic in (n^b_0..n^b_{N-1}, n^c_0..n^c_{N-1}).
class FockBasis {
 public:
  static std::shared_ptr<const FockBasis> build(const LatticeSpec& spec, int Nb, int Nc,
                                                std::size_t cap = kDefaultDimensionCap) {
    return std::shared_ptr<const FockBasis>(new FockBasis(spec, Nb, Nc, cap));
  }

  const LatticeSpec& spec() const { return spec_; }
  Sector sector() const { return sector_; }
  int Nb() const { return sector_.Nb; }
  int Nc() const { return sector_.Nc; }
  std::size_t num_sites() const { return spec_.num_sites(); }
  std::size_t dimension() const { return dim_b_ * dim_c_; }

  std::span<const std::uint16_t> ground(std::size_t i) const {
    return {b_states_.data() + (i / dim_c_) * num_sites(), num_sites()};
  }
  std::span<const std::uint16_t> excited(std::size_t i) const {
    return {c_states_.data() + (i % dim_c_) * num_sites(), num_sites()};
  }
  std::span<const std::uint16_t> occupations(std::size_t i, Species s) const {
    return s == Species::ground ? ground(i) : excited(i);
  }

  /// Index of the state with the given occupations, or npos.
  std::size_t index_of(std::span<const std::uint16_t> b, std::span<const std::uint16_t> c) const {
    const auto rb = b_table_.rank(b);
    const auto rc = c_table_.rank(c);
    if (rb == detail::CompositionTable::npos || rc == detail::CompositionTable::npos) return npos;
    return static_cast<std::size_t>(rb) * dim_c_ + static_cast<std::size_t>(rc);
  }

  /// Same lattice and sector; bases built separately are interchangeable.
  bool compatible(const FockBasis& other) const {
    return spec_ == other.spec_ && sector_ == other.sector_;
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  FockBasis(const LatticeSpec& spec, int Nb, int Nc, std::size_t cap)
      : spec_(spec),
        sector_{Nb, Nc},
        b_table_(checked_count(Nb), static_cast<int>(spec.num_sites())),
        c_table_(checked_count(Nc), static_cast<int>(spec.num_sites())) {
    const int n = static_cast<int>(spec.num_sites());
    const long double dim =
        detail::CompositionTable::size_of(Nb, n) * detail::CompositionTable::size_of(Nc, n);
    if (dim > static_cast<long double>(cap)) {
      throw DimensionCapExceeded("sector " + to_string(sector_) + " on " +
                                 std::to_string(n) + " sites has dimension " +
                                 std::to_string(static_cast<double>(dim)) + " > cap " +
                                 std::to_string(cap));
    }
    b_table_.enumerate(b_states_);
    c_table_.enumerate(c_states_);
    dim_b_ = static_cast<std::size_t>(b_table_.size());
    dim_c_ = static_cast<std::size_t>(c_table_.size());
  }

  static int checked_count(int n) {
    if (n < 0) throw InvalidArgument("particle numbers must be >= 0");
    if (n > std::numeric_limits<std::uint16_t>::max()) {
      throw InvalidArgument("particle number too large");
    }
    return n;
  }

  LatticeSpec spec_;
  Sector sector_;
  detail::CompositionTable b_table_;
  detail::CompositionTable c_table_;
  std::vector<std::uint16_t> b_states_;
  std::vector<std::uint16_t> c_states_;
  std::size_t dim_b_ = 0;
  std::size_t dim_c_ = 0;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

/// Amplitude vector over a FockBasis.
struct ManyBodyState {
  BasisPtr basis;
  Eigen::VectorXcd amplitudes;

  ManyBodyState() = default;
  ManyBodyState(BasisPtr b, Eigen::VectorXcd amps) : basis(std::move(b)), amplitudes(std::move(amps)) {
    if (!basis) throw InvalidArgument("state without basis");
    if (static_cast<std::size_t>(amplitudes.size()) != basis->dimension()) {
      throw InvalidArgument("amplitude vector length does not match basis dimension");
    }
  }

  static ManyBodyState zero(BasisPtr b) {
    const auto n = static_cast<Eigen::Index>(b->dimension());
    return {std::move(b), Eigen::VectorXcd::Zero(n)};
  }

  Sector sector() const { return basis->sector(); }
  double norm() const { return amplitudes.norm(); }

  ManyBodyState normalized() const {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw NumericalError("cannot normalize a zero or non-finite state");
    return {basis, amplitudes / n};
  }
};

inline void require_same_sector(const FockBasis& a, const FockBasis& b, const char* what) {
  if (!a.compatible(b)) {
    throw SectorMismatch(std::string(what) + ": sector " + to_string(a.sector()) +
                         " does not match " + to_string(b.sector()));
  }
}

/// <a|b>
inline cplx inner(const ManyBodyState& a, const ManyBodyState& b) {
  require_same_sector(*a.basis, *b.basis, "inner");
  return a.amplitudes.dot(b.amplitudes);
}

/// |<a|b>|^2 / (|a|^2 |b|^2)
inline double fidelity(const ManyBodyState& a, const ManyBodyState& b) {
  const double na = a.amplitudes.squaredNorm();
  const double nb = b.amplitudes.squaredNorm();
  return std::norm(inner(a, b)) / (na * nb);
}

using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// Sparse linear map between two sectors.
struct SparseOperator {
  BasisPtr domain;
  BasisPtr codomain;
  SparseMatrix matrix;

  static SparseOperator from_triplets(BasisPtr dom, BasisPtr cod,
                                      const std::vector<Eigen::Triplet<cplx>>& triplets) {
    SparseMatrix m(static_cast<Eigen::Index>(cod->dimension()),
                   static_cast<Eigen::Index>(dom->dimension()));
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.prune(cplx{0.0, 0.0}, 0.0);
    m.makeCompressed();
    return {std::move(dom), std::move(cod), std::move(m)};
  }

  static SparseOperator identity(BasisPtr b) {
    const auto n = static_cast<Eigen::Index>(b->dimension());
    SparseMatrix m(n, n);
    m.setIdentity();
    return {b, b, std::move(m)};
  }

  bool sector_diagonal() const { return domain->compatible(*codomain); }

  SparseOperator adjoint() const {
    SparseMatrix m = matrix.adjoint();
    m.makeCompressed();
    return {codomain, domain, std::move(m)};
  }

  /// Largest |A_ij - conj(A_ji)|; infinity for non-square maps.
  double hermiticity_defect() const {
    if (!sector_diagonal()) return std::numeric_limits<double>::infinity();
    const SparseMatrix diff = matrix - SparseMatrix(matrix.adjoint());
    double worst = 0.0;
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
        worst = std::max(worst, std::abs(it.value()));
      }
    }
    return worst;
  }

  /// Largest absolute row sum, an upper bound on the spectral radius.
  double norm_bound() const {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < matrix.outerSize(); ++k) {
      double row = 0.0;
      for (SparseMatrix::InnerIterator it(matrix, k); it; ++it) row += std::abs(it.value());
      worst = std::max(worst, row);
    }
    return worst;
  }
};

inline ManyBodyState apply(const SparseOperator& op, const ManyBodyState& psi) {
  require_same_sector(*op.domain, *psi.basis, "apply");
  return {op.codomain, op.matrix * psi.amplitudes};
}

/// Bose-Hubbard parameters. Interaction energy per site is
/// (U/2)[n_b(n_b-1) + n_c(n_c-1)] + cb_interaction*U*n_b*n_c; the default
/// cb_interaction = 1 makes it (U/2) n(n-1) of the total occupancy n.
struct BHParams {
  double J = 0.0;
  double U = 0.0;
  double cb_interaction = 1.0;
};

inline double onsite_energy(const BHParams& p, int nb, int nc) {
  return 0.5 * p.U * (nb * (nb - 1.0) + nc * (nc - 1.0)) + p.cb_interaction * p.U * nb * nc;
}

/// Two-species Bose-Hubbard Hamiltonian
///   H = -(J/Z) sum_{mu nu} T_{mu nu} (b+_mu b_nu + c+_mu c_nu) + interaction,
/// both species hopping with the same J.
inline SparseOperator hamiltonian(const BasisPtr& basis, const BHParams& p) {
  if (!std::isfinite(p.J) || !std::isfinite(p.U) || p.J < 0.0 || p.U < 0.0) {
    throw InvalidArgument("hamiltonian: J and U must be finite and >= 0");
  }
  const auto& spec = basis->spec();
  const std::size_t n = basis->num_sites();
  const int Z = spec.coordination();
  const Eigen::MatrixXi T = adjacency(spec);

  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(basis->dimension() * (1 + 2 * static_cast<std::size_t>(Z)));
  std::vector<std::uint16_t> b(n), c(n);
  for (std::size_t i = 0; i < basis->dimension(); ++i) {
    const auto gb = basis->ground(i);
    const auto gc = basis->excited(i);
    double diag = 0.0;
    for (std::size_t mu = 0; mu < n; ++mu) diag += onsite_energy(p, gb[mu], gc[mu]);
    if (diag != 0.0) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
    if (Z == 0 || p.J == 0.0) continue;

    const double t = -p.J / Z;
    for (Species s : {Species::ground, Species::excited}) {
      b.assign(gb.begin(), gb.end());
      c.assign(gc.begin(), gc.end());
      auto& occ = (s == Species::ground) ? b : c;
      for (std::size_t nu = 0; nu < n; ++nu) {
        if (occ[nu] == 0) continue;
        for (std::size_t mu = 0; mu < n; ++mu) {
          const int mult = T(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu));
          if (mult == 0) continue;
          // b+_mu b_nu |..n_mu..n_nu..> = sqrt(n_nu (n_mu + 1)) |..n_mu+1..n_nu-1..>
          const double amp = std::sqrt(static_cast<double>(occ[nu]) * (occ[mu] + 1.0));
          --occ[nu];
          ++occ[mu];
          const std::size_t j = basis->index_of(b, c);
          --occ[mu];
          ++occ[nu];
          trip.emplace_back(static_cast<int>(j), static_cast<int>(i), t * mult * amp);
        }
      }
    }
  }
  return SparseOperator::from_triplets(basis, basis, trip);
}

/// Collective absorption A(kappa) = sum_mu exp(i kappa r_mu) c+_mu b_mu,
/// mapping (Nb, Nc) -> (Nb-1, Nc+1). Its adjoint is the emission operator.
inline SparseOperator absorption_operator(const BasisPtr& in, const BasisPtr& out, MomentumIndex kappa) {
  if (in->Nb() < 1) throw InvalidArgument("absorption_operator: no ground-species atoms to excite");
  if (!(out->spec() == in->spec()) || out->Nb() != in->Nb() - 1 || out->Nc() != in->Nc() + 1) {
    throw SectorMismatch("absorption_operator: codomain must be sector " +
                         to_string({in->Nb() - 1, in->Nc() + 1}));
  }
  const auto& spec = in->spec();
  const std::size_t n = in->num_sites();
  std::vector<cplx> phase(n);
  for (std::size_t mu = 0; mu < n; ++mu) phase[mu] = spec.plane_wave(kappa, mu);

  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(in->dimension() * n);
  std::vector<std::uint16_t> b(n), c(n);
  for (std::size_t i = 0; i < in->dimension(); ++i) {
    const auto gb = in->ground(i);
    const auto gc = in->excited(i);
    b.assign(gb.begin(), gb.end());
    c.assign(gc.begin(), gc.end());
    for (std::size_t mu = 0; mu < n; ++mu) {
      if (b[mu] == 0) continue;
      const double amp = std::sqrt(static_cast<double>(b[mu]) * (c[mu] + 1.0));
      --b[mu];
      ++c[mu];
      const std::size_t j = out->index_of(b, c);
      ++b[mu];
      --c[mu];
      trip.emplace_back(static_cast<int>(j), static_cast<int>(i), phase[mu] * amp);
    }
  }
  return SparseOperator::from_triplets(in, out, trip);
}

inline SparseOperator absorption_operator(const BasisPtr& in, MomentumIndex kappa) {
  if (in->Nb() < 1) throw InvalidArgument("absorption_operator: no ground-species atoms to excite");
  return absorption_operator(in, FockBasis::build(in->spec(), in->Nb() - 1, in->Nc() + 1), kappa);
}

/// Mode creation operator (1/sqrt N) sum_mu exp(i k r_mu) a+_mu for species
/// a, mapping `in` to the sector with one more atom of that species.
inline SparseOperator creation_operator(const BasisPtr& in, const BasisPtr& out, Species s,
                                        MomentumIndex k) {
  const int db = s == Species::ground ? 1 : 0;
  if (!(out->spec() == in->spec()) || out->Nb() != in->Nb() + db ||
      out->Nc() != in->Nc() + 1 - db) {
    throw SectorMismatch("creation_operator: codomain sector mismatch");
  }
  const auto& spec = in->spec();
  const std::size_t n = in->num_sites();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(in->dimension() * n);
  std::vector<std::uint16_t> b(n), c(n);
  for (std::size_t i = 0; i < in->dimension(); ++i) {
    const auto gb = in->ground(i);
    const auto gc = in->excited(i);
    b.assign(gb.begin(), gb.end());
    c.assign(gc.begin(), gc.end());
    auto& occ = s == Species::ground ? b : c;
    for (std::size_t mu = 0; mu < n; ++mu) {
      const double amp = std::sqrt(occ[mu] + 1.0);
      ++occ[mu];
      const std::size_t j = out->index_of(b, c);
      --occ[mu];
      trip.emplace_back(static_cast<int>(j), static_cast<int>(i),
                        norm * amp * spec.plane_wave(k, mu));
    }
  }
  return SparseOperator::from_triplets(in, out, trip);
}

/// <a+_k a_k> for species s.
inline double momentum_occupation(const ManyBodyState& psi, Species s, MomentumIndex k) {
  const Sector sec = psi.sector();
  if ((s == Species::ground ? sec.Nb : sec.Nc) == 0) return 0.0;
  const auto lower = FockBasis::build(psi.basis->spec(), sec.Nb - (s == Species::ground),
                                      sec.Nc - (s == Species::excited));
  const auto annihilate = creation_operator(lower, psi.basis, s, k).adjoint();
  return apply(annihilate, psi).amplitudes.squaredNorm();
}

/// <n_mu> for species s.
inline double site_occupation(const ManyBodyState& psi, Species s, std::size_t mu) {
  if (mu >= psi.basis->num_sites()) throw InvalidArgument("site index out of range");
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.basis->dimension(); ++i) {
    sum += std::norm(psi.amplitudes[static_cast<Eigen::Index>(i)]) *
           psi.basis->occupations(i, s)[mu];
  }
  return sum / psi.amplitudes.squaredNorm();
}

/// <psi|H|psi> / <psi|psi>
inline double expectation(const SparseOperator& H, const ManyBodyState& psi) {
  const auto hpsi = apply(H, psi);
  return psi.amplitudes.dot(hpsi.amplitudes).real() / psi.amplitudes.squaredNorm();
}

/// <H^2> - <H>^2, evaluated as |(H - <H>)psi|^2 / |psi|^2.
inline double energy_variance(const SparseOperator& H, const ManyBodyState& psi) {
  const auto hpsi = apply(H, psi);
  const double n2 = psi.amplitudes.squaredNorm();
  const double e = psi.amplitudes.dot(hpsi.amplitudes).real() / n2;
  return (hpsi.amplitudes - e * psi.amplitudes).squaredNorm() / n2;
}

}  // namespace dicke

#endif  // DICKE_FOCK_HPP
