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

#include "qite/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qite/error.hpp"

namespace qite {

Index Spectrum::level_end(Index begin) const {
  const Real base = eigenvalues[begin];
  const Real width = degeneracy_tol * std::max<Real>(1.0, std::abs(base));
  Index end = begin + 1;
  while (end < dim() && eigenvalues[end] - base <= width) ++end;
  return end;
}

Spectrum eigendecompose(const Hamiltonian& h, Real degeneracy_tol, int cap) {
  if (!(degeneracy_tol >= 0)) {
    throw DomainError("degeneracy_tol must be non-negative");
  }
  const CMatrix m = to_dense(h, cap);
  const Real asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    throw InputError("Hamiltonian matrix is not Hermitian (max |M - M^H| = " +
                     std::to_string(asym) + ")");
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error("dense eigensolver failed");
  }

  Spectrum spec;
  spec.qubits = h.qubits();
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = solver.eigenvectors();
  spec.degeneracy_tol = degeneracy_tol;
  spec.ground_multiplicity = spec.level_end(0);
  if (spec.ground_multiplicity < spec.dim()) {
    spec.gap = spec.eigenvalues[spec.ground_multiplicity] - spec.eigenvalues[0];
  }
  return spec;
}

CVector eigen_coeffs(const StateVector& state, const Spectrum& spec) {
  if (state.dim() != spec.dim()) {
    throw DimensionError("eigen_coeffs: register mismatch");
  }
  return spec.eigenvectors.adjoint() * state.amplitudes();
}

Real level_weight(const CVector& coeffs, Index begin, Index end) {
  return coeffs.segment(begin, end - begin).squaredNorm();
}

Real fidelity(const StateVector& state, const Spectrum& spec) {
  if (state.dim() != spec.dim()) {
    throw DimensionError("fidelity: register mismatch");
  }
  const auto ground = spec.eigenvectors.leftCols(spec.ground_multiplicity);
  return (ground.adjoint() * state.amplitudes()).squaredNorm();
}

}  // namespace qite
