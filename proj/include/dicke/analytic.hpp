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

#ifndef DICKE_ANALYTIC_HPP
#define DICKE_ANALYTIC_HPP

// Closed-form emission predictions for the U = 0 limits. Probabilities are
// in units of the single-atom reference P_single.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "dicke/error.hpp"
#include "dicke/lattice.hpp"

namespace dicke::analytic {

/// Condensed / uniformly spread atom counts of the partial-condensate toy
/// model.
struct MixtureSpec {
  int N1 = 0;
  int N2 = 0;
};

namespace detail {

inline void require_nonnegative_time(double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("waiting time must be finite and >= 0, got " + std::to_string(dt));
  }
}

// Power series; summed in long double so that the alternating terms
// (largest ~1e7 at |x| = 20) keep ~1e-12 absolute accuracy.
inline double j0_series(double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum) && std::fabs(term) < 1e-21L) break;
  }
  return static_cast<double>(sum);
}

// Hankel asymptotic expansion, truncated at the smallest term. For x > 20
// the truncation error is below e^{-2x}.
inline double j0_asymptotic(double x) {
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 100; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(odd * odd) / (k * 8.0 * x);
    if (std::fabs(term) > std::fabs(prev)) break;
    // a_k / x^k enters P (even k) or Q (odd k) with sign (-1)^{floor(k/2)}.
    const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 0) {
      p += signed_term;
    } else {
      q += signed_term;
    }
    if (std::fabs(term) < 1e-18) break;
    prev = term;
  }
  const double w = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(w) - q * std::sin(w));
}

}  // namespace detail

/// Bessel function of the first kind, order zero. Absolute error below 1e-10
/// for |x| <= 50 (power series for |x| <= 20, Hankel expansion beyond).
inline double bessel_j0(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("bessel_j0: non-finite argument");
  const double ax = std::fabs(x);
  return ax <= 20.0 ? detail::j0_series(ax) : detail::j0_asymptotic(ax);
}

/// Interference phase phi(dt) = J (T_kappa - 1) dt of the condensed fraction.
inline double phase_phi(double J, double dt, MomentumIndex kappa, const LatticeSpec& spec) {
  detail::require_nonnegative_time(dt);
  return J * (dispersion(spec, kappa) - 1.0) * dt;
}

/// Reduction function (1/N) sum_k exp{iJ (T_k - T_{k-kappa}) dt}, summed over
/// the exact momentum grid of the finite lattice.
inline cplx reduction_j(double J, double dt, MomentumIndex kappa, const LatticeSpec& spec) {
  detail::require_nonnegative_time(dt);
  cplx sum{0.0, 0.0};
  for (const auto& k : momentum_grid(spec)) {
    const double dT = dispersion(spec, k) - dispersion(spec, spec.subtract(k, kappa));
    sum += std::polar(1.0, J * dT * dt);
  }
  return sum / static_cast<double>(spec.num_sites());
}

/// Small-|kappa| limit J0(J dt kx l / 2) J0(J dt ky l / 2) on the square
/// lattice. T_k averages over `dimensions` cosines, so in general the argument
/// is J dt k l / dimensions; a chain (dimensions = 1) gives J0(J dt k l).
/// Valid for |kappa| l << 1 with J dt |kappa| l = O(1); not checked.
inline double reduction_j_bessel(double J, double dt, double kappa_x, double kappa_y,
                                 double spacing, int dimensions = 2) {
  detail::require_nonnegative_time(dt);
  if (dimensions != 1 && dimensions != 2) {
    throw InvalidArgument("reduction_j_bessel: dimensions must be 1 or 2");
  }
  const double s = J * dt * spacing / dimensions;
  return bessel_j0(s * kappa_x) * bessel_j0(s * kappa_y);
}

/// Pure condensate, leading order: N^2 forward, zero elsewhere, for any dt.
/// The exact off-forward signal carries an O(N) recoil term on top.
inline double emission_superfluid(int N, MomentumIndex kappa_in, MomentumIndex kappa_out) {
  if (N < 1) throw InvalidArgument("emission_superfluid: N must be >= 1");
  return kappa_in == kappa_out ? static_cast<double>(N) * N : 0.0;
}

/// Forward emission |N1 e^{i phi} + N2 J(dt)|^2 of the partial condensate.
inline double emission_mixture(const MixtureSpec& mix, double J, double dt,
                               MomentumIndex kappa, const LatticeSpec& spec) {
  if (mix.N1 < 0 || mix.N2 < 0 || mix.N1 + mix.N2 < 1) {
    throw InvalidArgument("emission_mixture: need N1, N2 >= 0 and N1 + N2 >= 1");
  }
  const cplx amp = static_cast<double>(mix.N1) * std::polar(1.0, phase_phi(J, dt, kappa, spec)) +
                   static_cast<double>(mix.N2) * reduction_j(J, dt, kappa, spec);
  return std::norm(amp);
}

/// Cross term 2 N1 N2 Re[e^{-i phi} J(dt)] of emission_mixture.
inline double mixture_cross_term(const MixtureSpec& mix, double J, double dt,
                                 MomentumIndex kappa, const LatticeSpec& spec) {
  const cplx c = std::polar(1.0, -phase_phi(J, dt, kappa, spec)) * reduction_j(J, dt, kappa, spec);
  return 2.0 * mix.N1 * mix.N2 * c.real();
}

}  // namespace dicke::analytic

#endif  // DICKE_ANALYTIC_HPP
