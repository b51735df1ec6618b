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

#include "dicke/fock.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <Eigen/Eigenvalues>

#include "gtest/gtest.h"

using namespace dicke;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ManyBodyState random_state(const BasisPtr& b, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(b->dimension()));
  for (auto& x : v) x = {g(rng), g(rng)};
  return {b, v};
}

// Shifts every atom by one site along x.
ManyBodyState translate_x(const ManyBodyState& psi) {
  const auto& b = *psi.basis;
  const auto& spec = b.spec();
  const std::size_t n = b.num_sites();
  auto out = ManyBodyState::zero(psi.basis);
  std::vector<std::uint16_t> nb(n), nc(n);
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    for (std::size_t mu = 0; mu < n; ++mu) {
      nb[spec.translate(mu, 1, 0)] = b.ground(i)[mu];
      nc[spec.translate(mu, 1, 0)] = b.excited(i)[mu];
    }
    out.amplitudes[static_cast<Eigen::Index>(b.index_of(nb, nc))] = psi.amplitudes[static_cast<Eigen::Index>(i)];
  }
  return out;
}

ManyBodyState mott(const BasisPtr& b) {
  std::vector<std::uint16_t> ones(b->num_sites(), 1), zeros(b->num_sites(), 0);
  auto psi = ManyBodyState::zero(b);
  psi.amplitudes[static_cast<Eigen::Index>(b->index_of(ones, zeros))] = 1.0;
  return psi;
}

}  // namespace

TEST(FockBasis, DimensionExamples) {
  EXPECT_EQ(FockBasis::build(LatticeSpec(2, 1), 1, 0)->dimension(), 2u);
  EXPECT_EQ(FockBasis::build(LatticeSpec(2, 1), 1, 1)->dimension(), 4u);
  EXPECT_EQ(FockBasis::build(LatticeSpec(6, 1), 5, 1)->dimension(), 1512u);
  EXPECT_EQ(FockBasis::build(LatticeSpec(3, 1), 0, 0)->dimension(), 1u);
}

TEST(FockBasis, DimensionIsStarsAndBars) {
  for (auto [lx, ly, nb, nc] : {std::tuple{3, 1, 3, 0}, std::tuple{2, 2, 3, 1}, std::tuple{5, 1, 4, 2},
                                std::tuple{3, 2, 6, 0}}) {
    const LatticeSpec spec(lx, ly);
    const std::size_t n = spec.num_sites();
    const auto b = FockBasis::build(spec, nb, nc);
    EXPECT_EQ(b->dimension(), binomial(nb + n - 1, nb) * binomial(nc + n - 1, nc));
  }
}

TEST(FockBasis, CompleteDuplicateFreeLexicographic) {
  const auto b = FockBasis::build(LatticeSpec(2, 2), 3, 1);
  std::set<std::vector<std::uint16_t>> seen;
  std::vector<std::uint16_t> prev;
  for (std::size_t i = 0; i < b->dimension(); ++i) {
    std::vector<std::uint16_t> occ(b->ground(i).begin(), b->ground(i).end());
    occ.insert(occ.end(), b->excited(i).begin(), b->excited(i).end());
    int sb = 0, sc = 0;
    for (std::size_t mu = 0; mu < 4; ++mu) {
      sb += occ[mu];
      sc += occ[4 + mu];
    }
    EXPECT_EQ(sb, 3);
    EXPECT_EQ(sc, 1);
    if (i > 0) {
      EXPECT_TRUE(std::lexicographical_compare(occ.begin(), occ.end(), prev.begin(), prev.end()));
    }
    EXPECT_EQ(b->index_of(b->ground(i), b->excited(i)), i);
    seen.insert(occ);
    prev = occ;
  }
  EXPECT_EQ(seen.size(), b->dimension());
}

TEST(FockBasis, IndexOfRejectsForeignOccupations) {
  const auto b = FockBasis::build(LatticeSpec(3, 1), 2, 0);
  const std::vector<std::uint16_t> three{1, 1, 1}, none{0, 0, 0};
  EXPECT_EQ(b->index_of(three, none), FockBasis::npos);
}

TEST(FockBasis, CapExceeded) {
  EXPECT_THROW(FockBasis::build(LatticeSpec(4, 4), 16, 0), DimensionCapExceeded);
  EXPECT_THROW(FockBasis::build(LatticeSpec(4, 1), 4, 0, 10), DimensionCapExceeded);
  EXPECT_THROW(FockBasis::build(LatticeSpec(4, 1), -1, 0), InvalidArgument);
}

TEST(Hamiltonian, TwoSiteSingleAtomEigenvalues) {
  const auto b = FockBasis::build(LatticeSpec(2, 1), 1, 0);
  const auto H = hamiltonian(b, {0.7, 5.0});
  const Eigen::MatrixXcd dense(H.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  EXPECT_NEAR(es.eigenvalues()(0), -0.7, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(1), 0.7, 1e-14);
}

TEST(Hamiltonian, SingleSiteDoublon) {
  const auto b = FockBasis::build(LatticeSpec(1, 1), 2, 0);
  const auto H = hamiltonian(b, {1.0, 3.0});
  ASSERT_EQ(b->dimension(), 1u);
  EXPECT_DOUBLE_EQ(H.matrix.coeff(0, 0).real(), 3.0);
}

TEST(Hamiltonian, DiagonalWithoutHopping) {
  const auto b = FockBasis::build(LatticeSpec(3, 1), 3, 1);
  const auto H = hamiltonian(b, {0.0, 2.0});
  for (Eigen::Index k = 0; k < H.matrix.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(H.matrix, k); it; ++it) EXPECT_EQ(it.row(), it.col());
  }
}

TEST(Hamiltonian, HermitianAndSectorPreserving) {
  for (auto [lx, ly, nb, nc] : {std::tuple{4, 1, 4, 0}, std::tuple{4, 1, 3, 1}, std::tuple{2, 2, 3, 1},
                                std::tuple{3, 2, 5, 1}}) {
    const auto b = FockBasis::build(LatticeSpec(lx, ly), nb, nc);
    const auto H = hamiltonian(b, {1.3, 0.7});
    EXPECT_LE(H.hermiticity_defect(), 1e-14);
    EXPECT_TRUE(H.sector_diagonal());
    EXPECT_TRUE(H.domain->compatible(*H.codomain));
  }
}

TEST(Hamiltonian, NoExplicitZeros) {
  const auto b = FockBasis::build(LatticeSpec(4, 1), 3, 1);
  const auto H = hamiltonian(b, {1.0, 0.0});
  for (Eigen::Index k = 0; k < H.matrix.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(H.matrix, k); it; ++it) EXPECT_NE(it.value(), cplx(0.0, 0.0));
  }
}

TEST(Hamiltonian, InteractionUsesTotalOccupancyByDefault) {
  const auto b = FockBasis::build(LatticeSpec(1, 1), 1, 1);
  EXPECT_DOUBLE_EQ(hamiltonian(b, {0.0, 2.0}).matrix.coeff(0, 0).real(), 2.0);
  // With the b-c repulsion switched off a shared site costs nothing.
  EXPECT_EQ(hamiltonian(b, {0.0, 2.0, 0.0}).matrix.nonZeros(), 0);
}

TEST(Hamiltonian, RejectsNegativeParameters) {
  const auto b = FockBasis::build(LatticeSpec(2, 1), 1, 0);
  EXPECT_THROW(hamiltonian(b, {-1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(hamiltonian(b, {1.0, -1.0}), InvalidArgument);
}

TEST(Absorption, SingleAtom) {
  const auto in = FockBasis::build(LatticeSpec(1, 1), 1, 0);
  const auto A = absorption_operator(in, {0, 0});
  const auto out = apply(A, ManyBodyState(in, Eigen::VectorXcd::Ones(1)));
  EXPECT_EQ(out.sector(), (Sector{0, 1}));
  EXPECT_NEAR(std::abs(out.amplitudes(0)), 1.0, 1e-15);
}

TEST(Absorption, MottNormAndCollapse) {
  for (auto [lx, ly] : {std::pair{4, 1}, std::pair{2, 2}, std::pair{6, 1}}) {
    const LatticeSpec spec(lx, ly);
    const int n = static_cast<int>(spec.num_sites());
    const auto g = FockBasis::build(spec, n, 0);
    const auto m = mott(g);
    for (const auto& k : momentum_grid(spec)) {
      const auto A = absorption_operator(g, k);
      const auto excited = apply(A, m);
      EXPECT_NEAR(excited.amplitudes.squaredNorm(), n, 1e-12);
      const auto back = apply(A.adjoint(), excited);
      EXPECT_NEAR((back.amplitudes - n * m.amplitudes).norm(), 0.0, 1e-12);
    }
  }
}

TEST(Absorption, AdjointOnRandomStates) {
  std::mt19937_64 rng(11);
  const LatticeSpec spec(3, 2);
  const auto g = FockBasis::build(spec, 4, 0);
  const auto e = FockBasis::build(spec, 3, 1);
  for (const auto& k : momentum_grid(spec)) {
    const auto A = absorption_operator(g, e, k);
    const auto Ad = A.adjoint();
    const auto psi = random_state(g, rng);
    const auto phi = random_state(e, rng);
    const cplx lhs = phi.amplitudes.dot(apply(A, psi).amplitudes);
    const cplx rhs = std::conj(psi.amplitudes.dot(apply(Ad, phi).amplitudes));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Absorption, TranslationCovariance) {
  std::mt19937_64 rng(5);
  const LatticeSpec spec(4, 1);
  const auto g = FockBasis::build(spec, 3, 0);
  const auto e = FockBasis::build(spec, 2, 1);
  const auto psi = random_state(g, rng);
  for (const auto& k : momentum_grid(spec)) {
    const auto A = absorption_operator(g, e, k);
    const auto lhs = translate_x(apply(A, psi));
    const cplx phase = std::polar(1.0, -spec.wave_vector(k)[0] * spec.spacing());
    const auto rhs = apply(A, translate_x(psi));
    EXPECT_LE((lhs.amplitudes - phase * rhs.amplitudes).norm(), 1e-12);
  }
}

TEST(Absorption, EmptySectorRejected) {
  const auto g = FockBasis::build(LatticeSpec(2, 1), 0, 1);
  EXPECT_THROW(absorption_operator(g, {0, 0}), InvalidArgument);
}

TEST(Apply, IdentityAndZero) {
  std::mt19937_64 rng(3);
  const auto b = FockBasis::build(LatticeSpec(3, 1), 2, 1);
  const auto psi = random_state(b, rng);
  EXPECT_EQ(apply(SparseOperator::identity(b), psi).amplitudes, psi.amplitudes);
  const auto H = hamiltonian(b, {1.0, 1.0});
  EXPECT_EQ(apply(H, ManyBodyState::zero(b)).amplitudes.norm(), 0.0);
}

TEST(Apply, SectorMismatch) {
  const auto b = FockBasis::build(LatticeSpec(3, 1), 2, 1);
  const auto other = FockBasis::build(LatticeSpec(3, 1), 3, 0);
  EXPECT_THROW(apply(hamiltonian(b, {1.0, 1.0}), ManyBodyState::zero(other)), SectorMismatch);
}

TEST(CreationOperator, MomentumOccupation) {
  const LatticeSpec spec(4, 1);
  const auto vac = FockBasis::build(spec, 0, 0);
  const auto one = FockBasis::build(spec, 1, 0);
  const auto psi = apply(creation_operator(vac, one, Species::ground, {1, 0}),
                         ManyBodyState(vac, Eigen::VectorXcd::Ones(1)));
  EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
  EXPECT_NEAR(momentum_occupation(psi, Species::ground, {1, 0}), 1.0, 1e-14);
  EXPECT_NEAR(momentum_occupation(psi, Species::ground, {0, 0}), 0.0, 1e-14);
  for (std::size_t mu = 0; mu < 4; ++mu) EXPECT_NEAR(site_occupation(psi, Species::ground, mu), 0.25, 1e-14);
}
