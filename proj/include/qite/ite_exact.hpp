// Copyright 2026 The qite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <optional>
#include <vector>

#include "qite/pauli.hpp"
#include "qite/spectral.hpp"
#include "qite/state_vector.hpp"

namespace qite {

/// Overlap below which a start state counts as orthogonal to a level.
inline constexpr Real kOrthogonalOverlap = 1e-14;

/**
 * Sampled imaginary-time trajectory. All columns have the same length and
 * `times` is strictly increasing.
 *
 * `fidelity` is the weight on the target level: the ground level, or for an
 * orthogonal start (`orthogonal_start`) the lowest level the start state
 * overlaps. `fidelity_bound` is 1/(1 + f0^{-1} e^{-2 t gap}) for that level
 * and `norm_log` accumulates log ||e^{-tH} psi(0)||.
 */
struct EvolutionTrace {
  std::vector<Real> times;
  std::vector<Real> energy;
  std::vector<Real> fidelity;
  std::vector<Real> grad_norm_sq;
  std::vector<Real> fidelity_bound;
  std::vector<Real> norm_log;

  bool orthogonal_start = false;
  Real f0 = 0.0;
  std::optional<Real> gap;
  Index target_level_begin = 0;
  Index target_level_end = 0;

  std::size_t size() const { return times.size(); }

  void push(Real t, Real e, Real f, Real g, Real bound, Real log_norm);

  /// Every sample satisfies fidelity >= fidelity_bound - slack.
  bool fidelity_bound_ok(Real slack = 1e-9) const;
};

struct ExactEvolution {
  EvolutionTrace trace;
  StateVector final_state;
  CVector final_coeffs;
};

/**
 * Closed-form ITE coefficients at time t in the eigenbasis:
 *   alpha_j(t) = alpha_j(0) (sum_k |alpha_k(0)|^2 e^{-2t(lambda_k - lambda_j)})^{-1/2}.
 * Evaluated in log space relative to the lowest populated eigenvalue, so
 * large t neither overflows nor underflows. Coefficients that are exactly
 * zero stay exactly zero.
 */
CVector exact_ite_coeffs(const CVector& alpha0, const RVector& eigenvalues,
                         Real t);

/// log ||e^{-tH} psi(0)|| from eigenbasis coefficients.
Real exact_log_norm(const CVector& alpha0, const RVector& eigenvalues, Real t);

ExactEvolution exact_evolve(const StateVector& state0, const Hamiltonian& h,
                            Real t, int samples);
ExactEvolution exact_evolve(const StateVector& state0, const Spectrum& spec,
                            Real t, int samples);

/// Evolution of an eigenbasis coefficient vector; exact zeros are kept.
ExactEvolution exact_evolve_coeffs(const CVector& alpha0,
                                   const Spectrum& spec, Real t, int samples);

/// Normalized projection of `state0` onto the lowest level it overlaps,
/// i.e. lim_{t->inf} psi(t).
StateVector limit_state(const StateVector& state0, const Spectrum& spec);

/// ||H psi - <H> psi||^2, the squared norm of the energy gradient on the
/// unit sphere (equivalently the energy variance).
Real gradient_norm_sq(const StateVector& state, const Hamiltonian& h);

/// 1 / (1 + f0^{-1} e^{-2 t gap}).
Real fidelity_lower_bound(Real f0, Real gap, Real t);

/// Smallest t >= 0 at which fidelity_lower_bound reaches `f_target`.
Real fidelity_threshold_time(Real f_target, Real f0, Real gap);

/// Leading-order distance bound ||psi(t) - psi(inf)||^2 <= e^{-2t gap}/f0^3
/// times |1 + O(e^{-2t gap})|^2. Only meaningful once `correction` is small.
struct ErrorBound {
  Real leading = 0.0;
  Real correction = 0.0;  // e^{-2 t gap}
  bool asymptotic_regime = false;  // correction <= 0.1
};

ErrorBound error_bound(Real f0, Real gap, Real t);

}  // namespace qite
