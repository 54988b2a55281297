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

#include "qite/pauli.hpp"
#include "qite/state_vector.hpp"

namespace qite {

inline constexpr Real kDefaultDegeneracyTol = 1e-9;

/**
 * Full eigendecomposition of a Hamiltonian with ascending eigenvalues.
 *
 * The ground level is the cluster of eigenvalues within
 * degeneracy_tol * max(1, |lambda_0|) of lambda_0; `ground_multiplicity`
 * counts it and `gap` is the distance to the first eigenvalue outside it.
 * A multiple of the identity has no gap and sets `identity_multiple`.
 */
struct Spectrum {
  int qubits = 0;
  RVector eigenvalues;
  CMatrix eigenvectors;  // columns, orthonormal
  Index ground_multiplicity = 0;
  std::optional<Real> gap;
  Real degeneracy_tol = kDefaultDegeneracyTol;

  bool identity_multiple() const { return !gap.has_value(); }
  Index dim() const { return eigenvalues.size(); }
  Real ground_energy() const { return eigenvalues[0]; }

  /// One past the last index of the degenerate level that starts at `begin`.
  Index level_end(Index begin) const;
};

Spectrum eigendecompose(const Hamiltonian& h,
                        Real degeneracy_tol = kDefaultDegeneracyTol,
                        int cap = dense_cap());

/// alpha_j = <psi_j|psi>.
CVector eigen_coeffs(const StateVector& state, const Spectrum& spec);

/// Squared overlap with the ground eigenspace.
Real fidelity(const StateVector& state, const Spectrum& spec);

/// Squared overlap with eigenvectors [begin, end).
Real level_weight(const CVector& coeffs, Index begin, Index end);

}  // namespace qite
