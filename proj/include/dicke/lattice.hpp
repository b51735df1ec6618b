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

#ifndef DICKE_LATTICE_HPP
#define DICKE_LATTICE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dicke/error.hpp"

namespace dicke {

using cplx = std::complex<double>;

/// Integer mode index of a lattice momentum. Canonical values lie in
/// (-L/2, L/2] per dimension; see LatticeSpec::canonical.
struct MomentumIndex {
  int nx = 0;
  int ny = 0;

  friend bool operator==(const MomentumIndex&, const MomentumIndex&) = default;
};

namespace detail {

inline int floor_mod(long long a, long long m) {
  const long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

/// exp(2*pi*i*num/den), exact at quarter turns so that momentum sums on
/// small grids cancel to exact zeros.
inline cplx unit_phase(long long num, long long den) {
  long long n = floor_mod(num, den);
  if ((4 * n) % den == 0) {
    switch ((4 * n) / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  // Centered representative keeps e^{-i t} == conj(e^{i t}) bit for bit.
  if (2 * n > den) n -= den;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(n) /
                             static_cast<double>(den));
}

}  // namespace detail

/// Periodic rectangular lattice with Lx*Ly sites, row-major site order.
class LatticeSpec {
 public:
  LatticeSpec(int Lx, int Ly = 1, double spacing = 1.0)
      : Lx_(Lx), Ly_(Ly), spacing_(spacing) {
    if (Lx < 1 || Ly < 1) {
      throw InvalidArgument("lattice extents must be >= 1, got " +
                            std::to_string(Lx) + "x" + std::to_string(Ly));
    }
    if (!(spacing > 0.0)) {
      throw InvalidArgument("lattice spacing must be positive");
    }
  }

  int Lx() const { return Lx_; }
  int Ly() const { return Ly_; }
  double spacing() const { return spacing_; }
  std::size_t num_sites() const { return static_cast<std::size_t>(Lx_) * Ly_; }

  /// Number of dimensions with extent > 1.
  int dimensions() const { return (Lx_ > 1 ? 1 : 0) + (Ly_ > 1 ? 1 : 0); }
  int coordination() const { return 2 * dimensions(); }

  /// Wraps an arbitrary mode index into (-L/2, L/2].
  MomentumIndex canonical(MomentumIndex k) const {
    return {wrap(k.nx, Lx_), wrap(k.ny, Ly_)};
  }

  /// True if k is already canonical (no wrapping needed).
  bool contains(MomentumIndex k) const { return canonical(k) == k; }

  MomentumIndex add(MomentumIndex a, MomentumIndex b) const {
    return canonical({a.nx + b.nx, a.ny + b.ny});
  }
  MomentumIndex subtract(MomentumIndex a, MomentumIndex b) const {
    return canonical({a.nx - b.nx, a.ny - b.ny});
  }
  MomentumIndex negate(MomentumIndex a) const {
    return canonical({-a.nx, -a.ny});
  }

  /// Physical wave vector (2*pi*nx/(Lx*l), 2*pi*ny/(Ly*l)).
  std::array<double, 2> wave_vector(MomentumIndex k) const {
    const auto c = canonical(k);
    const double two_pi = 2.0 * std::numbers::pi;
    return {two_pi * c.nx / (Lx_ * spacing_), two_pi * c.ny / (Ly_ * spacing_)};
  }

  /// exp(i k . r_mu), evaluated from integer indices.
  cplx plane_wave(MomentumIndex k, std::size_t mu) const {
    const long long x = static_cast<long long>(mu % Lx_);
    const long long y = static_cast<long long>(mu / Lx_);
    const long long num = detail::floor_mod(k.nx * x, Lx_) * static_cast<long long>(Ly_) +
                          detail::floor_mod(k.ny * y, Ly_) * static_cast<long long>(Lx_);
    return detail::unit_phase(num, static_cast<long long>(Lx_) * Ly_);
  }

  /// Position of a mode in momentum_grid() order.
  std::size_t grid_index(MomentumIndex k) const {
    const auto c = canonical(k);
    return static_cast<std::size_t>(detail::floor_mod(c.ny, Ly_)) * Lx_ +
           static_cast<std::size_t>(detail::floor_mod(c.nx, Lx_));
  }

  MomentumIndex mode_at(std::size_t i) const {
    if (i >= num_sites()) {
      throw InvalidArgument("mode index " + std::to_string(i) + " out of range");
    }
    return canonical({static_cast<int>(i % Lx_), static_cast<int>(i / Lx_)});
  }

  /// Site reached from mu by moving (dx, dy) with periodic wrap.
  std::size_t translate(std::size_t mu, int dx, int dy) const {
    const int x = detail::floor_mod(static_cast<long long>(mu % Lx_) + dx, Lx_);
    const int y = detail::floor_mod(static_cast<long long>(mu / Lx_) + dy, Ly_);
    return static_cast<std::size_t>(y) * Lx_ + x;
  }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

 private:
  static int wrap(int n, int L) {
    int r = detail::floor_mod(n, L);
    if (2 * r > L) r -= L;
    return r;
  }

  int Lx_;
  int Ly_;
  double spacing_;
};

inline std::array<double, 2> site_position(const LatticeSpec& spec, std::size_t mu) {
  if (mu >= spec.num_sites()) {
    throw InvalidArgument("site index " + std::to_string(mu) + " out of range [0, " +
                          std::to_string(spec.num_sites()) + ")");
  }
  return {spec.spacing() * static_cast<double>(mu % spec.Lx()),
          spec.spacing() * static_cast<double>(mu / spec.Lx())};
}

/// Nearest-neighbour adjacency T with edge multiplicities. In a periodic
/// dimension of extent 2 both neighbours coincide, so the entry is 2.
inline Eigen::MatrixXi adjacency(const LatticeSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.num_sites());
  Eigen::MatrixXi T = Eigen::MatrixXi::Zero(n, n);
  for (std::size_t mu = 0; mu < spec.num_sites(); ++mu) {
    const auto m = static_cast<Eigen::Index>(mu);
    if (spec.Lx() > 1) {
      T(m, static_cast<Eigen::Index>(spec.translate(mu, +1, 0))) += 1;
      T(m, static_cast<Eigen::Index>(spec.translate(mu, -1, 0))) += 1;
    }
    if (spec.Ly() > 1) {
      T(m, static_cast<Eigen::Index>(spec.translate(mu, 0, +1))) += 1;
      T(m, static_cast<Eigen::Index>(spec.translate(mu, 0, -1))) += 1;
    }
  }
  return T;
}

/// T_k = (1/Z) sum_nu T_{mu nu} exp(ik(r_nu - r_mu)): the mean of
/// cos(k_d l) over the dimensions with extent > 1. A single site has T_k = 1.
inline double dispersion(const LatticeSpec& spec, MomentumIndex k) {
  const auto c = spec.canonical(k);
  if (spec.dimensions() == 0) return 1.0;
  double sum = 0.0;
  if (spec.Lx() > 1) sum += detail::unit_phase(c.nx, spec.Lx()).real();
  if (spec.Ly() > 1) sum += detail::unit_phase(c.ny, spec.Ly()).real();
  return sum / spec.dimensions();
}

/// All N modes; nx runs fastest, each axis ordered 0, 1, ..., L/2, -L/2+1, ..., -1.
inline std::vector<MomentumIndex> momentum_grid(const LatticeSpec& spec) {
  std::vector<MomentumIndex> grid;
  grid.reserve(spec.num_sites());
  for (std::size_t i = 0; i < spec.num_sites(); ++i) grid.push_back(spec.mode_at(i));
  return grid;
}

}  // namespace dicke

#endif  // DICKE_LATTICE_HPP
