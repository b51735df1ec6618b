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

#ifndef DICKE_DYNAMICS_HPP
#define DICKE_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/error.hpp"
#include "dicke/fock.hpp"

namespace dicke {

struct PropagatorOptions {
  /// Sectors up to this dimension are diagonalized densely; larger ones use
  /// Krylov propagation.
  std::size_t dense_limit = 4096;
  /// Target norm error of a Krylov propagation over the full interval.
  double tolerance = 1e-10;
  int krylov_dim = 40;
};

namespace detail {

inline void require_hermitian(const SparseOperator& H) {
  if (!H.sector_diagonal()) throw SectorMismatch("Hamiltonian must map a sector to itself");
  const double scale = std::max(1.0, H.norm_bound());
  const double defect = H.hermiticity_defect();
  if (defect > 1e-12 * scale) {
    throw NumericalError("operator is not Hermitian (defect " + std::to_string(defect) + ")");
  }
}

inline bool is_real(const SparseMatrix& m) {
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value().imag() != 0.0) return false;
    }
  }
  return true;
}

/// Lanczos tridiagonalization with full reorthogonalization, started from
/// v / |v|. Stops early on invariant subspace (beta below `breakdown`).
struct LanczosBasis {
  Eigen::MatrixXcd V;  // columns: orthonormal Krylov vectors
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;  // beta(j) couples vectors j and j+1; beta(m-1) is the residual
  bool invariant = false;
};

inline LanczosBasis lanczos(const SparseMatrix& H, const Eigen::VectorXcd& v, int max_dim,
                            double breakdown) {
  const Eigen::Index n = v.size();
  const int m = static_cast<int>(std::min<Eigen::Index>(max_dim, n));
  LanczosBasis out;
  out.V.resize(n, m);
  out.alpha.resize(m);
  out.beta.resize(m);
  out.V.col(0) = v / v.norm();
  int used = m;
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd w = H * out.V.col(j);
    out.alpha(j) = out.V.col(j).dot(w).real();
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd coeffs = out.V.leftCols(j + 1).adjoint() * w;
      w -= out.V.leftCols(j + 1) * coeffs;
    }
    out.beta(j) = w.norm();
    if (out.beta(j) < breakdown) {
      used = j + 1;
      out.invariant = true;
      break;
    }
    if (j + 1 < m) out.V.col(j + 1) = w / out.beta(j);
  }
  if (used == n) out.invariant = true;
  out.V.conservativeResize(n, used);
  out.alpha.conservativeResize(used);
  out.beta.conservativeResize(used);
  return out;
}

}  // namespace detail

/// Propagator exp(-iHt) for a fixed Hermitian H. Small sectors are
/// diagonalized once and reused for every t.
class StaticPropagator {
 public:
  explicit StaticPropagator(SparseOperator H, PropagatorOptions opts = {})
      : H_(std::move(H)), opts_(opts) {
    detail::require_hermitian(H_);
    scale_ = std::max(1.0, H_.norm_bound());
    if (H_.domain->dimension() <= opts_.dense_limit) {
      dense_ = true;
      if (detail::is_real(H_.matrix)) {
        const Eigen::MatrixXd dense = Eigen::MatrixXd(H_.matrix.real());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
        evals_ = es.eigenvalues();
        evecs_ = es.eigenvectors().cast<cplx>();
      } else {
        const Eigen::MatrixXcd dense = Eigen::MatrixXcd(H_.matrix);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
        if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
        evals_ = es.eigenvalues();
        evecs_ = es.eigenvectors();
      }
    }
  }

  const SparseOperator& hamiltonian() const { return H_; }
  bool uses_dense() const { return dense_; }

  ManyBodyState evolve(const ManyBodyState& psi, double t) const {
    require_same_sector(*H_.domain, *psi.basis, "evolve");
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("evolution time must be finite and >= 0");
    if (t == 0.0 || psi.amplitudes.squaredNorm() == 0.0) return psi;
    if (dense_) {
      Eigen::VectorXcd c = evecs_.adjoint() * psi.amplitudes;
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -evals_(i) * t);
      return {psi.basis, evecs_ * c};
    }
    return {psi.basis, krylov(psi.amplitudes, t)};
  }

 private:
  // Adaptive-step Krylov propagation. The local error of a step tau is
  // estimated by |v| beta_m |[exp(-i tau T_m)]_{m,1}|, and each step is held
  // to tolerance * tau / t.
  Eigen::VectorXcd krylov(const Eigen::VectorXcd& v0, double t) const {
    Eigen::VectorXcd w = v0;
    double remaining = t;
    double tau = t;
    const double min_tau = 1e-12 * t;
    while (remaining > 0.0) {
      const double wnorm = w.norm();
      const auto lb = detail::lanczos(H_.matrix, w, opts_.krylov_dim, 1e-13 * scale_);
      const Eigen::Index m = lb.alpha.size();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(lb.alpha, lb.beta.head(m - 1), Eigen::ComputeEigenvectors);
      const Eigen::VectorXd& lam = es.eigenvalues();
      const Eigen::MatrixXd& S = es.eigenvectors();

      tau = std::min(tau * 2.0, remaining);
      Eigen::VectorXcd c(m);
      for (;;) {
        Eigen::VectorXcd d(m);
        for (Eigen::Index i = 0; i < m; ++i) d(i) = std::polar(1.0, -lam(i) * tau) * S(0, i);
        c = S.cast<cplx>() * d;
        if (lb.invariant) break;
        const double err = wnorm * lb.beta(m - 1) * std::abs(c(m - 1));
        const double allowed = opts_.tolerance * tau / t;
        if (err <= allowed) break;
        const double shrink = 0.9 * std::pow(allowed / err, 1.0 / static_cast<double>(m));
        tau *= std::clamp(shrink, 0.1, 0.9);
        if (tau < min_tau) throw NumericalError("Krylov propagation did not converge");
      }
      w = wnorm * (lb.V * c);
      remaining -= tau;
      if (remaining < 1e-15 * t) remaining = 0.0;
    }
    return w;
  }

  SparseOperator H_;
  PropagatorOptions opts_;
  double scale_ = 1.0;
  bool dense_ = false;
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;
};

/// exp(-iHt)|psi>
inline ManyBodyState evolve_static(const ManyBodyState& psi, const SparseOperator& H, double t,
                                   PropagatorOptions opts = {}) {
  if (t == 0.0) {
    detail::require_hermitian(H);
    return psi;
  }
  return StaticPropagator(H, opts).evolve(psi, t);
}

enum class RampProfile { linear, smoothstep };

/// Interpolation (J_start, U_start) -> (J_end, U_end) over `duration`,
/// integrated with `steps` piecewise-constant midpoint slices.
struct RampSchedule {
  double duration = 0.0;
  RampProfile profile = RampProfile::smoothstep;
  double J_start = 0.0;
  double U_start = 0.0;
  double J_end = 0.0;
  double U_end = 0.0;
  int steps = 1;

  /// Profile value f(s) in [0, 1] at fractional time s.
  double shape(double s) const {
    return profile == RampProfile::linear ? s : s * s * (3.0 - 2.0 * s);
  }

  BHParams params_at(double s, double cb_interaction = 1.0) const {
    const double f = shape(s);
    return {J_start + (J_end - J_start) * f, U_start + (U_end - U_start) * f, cb_interaction};
  }

  void validate() const {
    if (!(duration >= 0.0) || !std::isfinite(duration)) throw InvalidArgument("ramp duration must be >= 0");
    if (steps < 1) throw InvalidArgument("ramp steps must be >= 1");
    for (double v : {J_start, U_start, J_end, U_end}) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("ramp endpoints must be finite and >= 0");
    }
  }
};

/// Ramp evolution: slice k uses H at the midpoint s = (k + 1/2) / steps.
inline ManyBodyState evolve_ramp(const ManyBodyState& psi, const RampSchedule& sched,
                                 double cb_interaction = 1.0, PropagatorOptions opts = {}) {
  sched.validate();
  if (sched.duration == 0.0) return psi;
  const double slice = sched.duration / sched.steps;
  ManyBodyState cur = psi;
  for (int k = 0; k < sched.steps; ++k) {
    const BHParams p = sched.params_at((k + 0.5) / sched.steps, cb_interaction);
    cur = evolve_static(cur, hamiltonian(psi.basis, p), slice, opts);
  }
  return cur;
}

struct GroundState {
  double energy = 0.0;
  ManyBodyState state;
};

namespace detail {

/// Global phase: the first amplitude of (numerically) largest modulus is
/// made real and positive.
inline void fix_phase(Eigen::VectorXcd& v) {
  const double biggest = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= biggest * (1.0 - 1e-9)) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

}  // namespace detail

/// Lowest eigenpair. Throws NumericalError when the lowest level is
/// degenerate within 1e-9 of the operator scale.
inline GroundState ground_state(const SparseOperator& H, PropagatorOptions opts = {}) {
  detail::require_hermitian(H);
  const std::size_t dim = H.domain->dimension();
  const double scale = std::max(1.0, H.norm_bound());
  const double degenerate_gap = 1e-9 * scale;
  Eigen::VectorXcd vec;
  double e0 = 0.0;
  double e1 = std::numeric_limits<double>::infinity();
  if (dim <= opts.dense_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(H.matrix)};
    if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    e0 = es.eigenvalues()(0);
    if (dim > 1) e1 = es.eigenvalues()(1);
    vec = es.eigenvectors().col(0);
  } else {
    // Deterministic start vector with weight on every basis state.
    Eigen::VectorXcd start(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < start.size(); ++i) start(i) = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i));
    const auto lb = detail::lanczos(H.matrix, start, 300, 1e-13 * scale);
    const Eigen::Index m = lb.alpha.size();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(lb.alpha, lb.beta.head(m - 1), Eigen::ComputeEigenvectors);
    e0 = es.eigenvalues()(0);
    if (m > 1) e1 = es.eigenvalues()(1);
    const double residual = lb.invariant ? 0.0 : lb.beta(m - 1) * std::abs(es.eigenvectors()(m - 1, 0));
    if (residual > 1e-8 * scale) throw NumericalError("Lanczos ground state did not converge");
    vec = lb.V * es.eigenvectors().col(0).cast<cplx>();
  }
  if (e1 - e0 < degenerate_gap) {
    throw NumericalError("ground level is degenerate (gap " + std::to_string(e1 - e0) + ")");
  }
  vec.normalize();
  detail::fix_phase(vec);
  return {e0, ManyBodyState(H.domain, std::move(vec))};
}

}  // namespace dicke

#endif  // DICKE_DYNAMICS_HPP
