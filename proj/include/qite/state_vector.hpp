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

#include "qite/types.hpp"

namespace qite {

/**
 * Dense register of 2^Q complex amplitudes.
 *
 * Basis index bits are big-endian in the qubit label: qubit 0 is the most
 * significant bit, so the bitstring "101" is index 5.
 */
class StateVector {
 public:
  /// |0...0> on `qubits` qubits.
  explicit StateVector(int qubits);
  StateVector(int qubits, CVector amplitudes);

  int qubits() const noexcept { return qubits_; }
  Index dim() const noexcept { return amps_.size(); }

  const CVector& amplitudes() const noexcept { return amps_; }
  CVector& amplitudes() noexcept { return amps_; }

  Complex operator[](Index i) const { return amps_[i]; }
  Complex& operator[](Index i) { return amps_[i]; }

  Real norm() const { return amps_.norm(); }

  /// Rescales to unit norm and returns the norm before rescaling. A state
  /// whose amplitudes all fall below 1e-300 throws StateError.
  Real normalize();

  /// Throws StateError when |norm - 1| exceeds `tol`.
  void require_normalized(Real tol) const;

 private:
  int qubits_;
  CVector amps_;
};

/// Throws DimensionError unless both operands live on the same register.
void require_same_register(const StateVector& a, const StateVector& b);

}  // namespace qite
