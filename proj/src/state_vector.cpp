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

#include "qite/state_vector.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qite/error.hpp"

namespace qite {

namespace {

int cap_from_env(const char* name, int fallback) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return fallback;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (*end != '\0' || parsed < 1 || parsed > 62) {
    throw InputError(std::string(name) + " must be an integer in [1, 62]");
  }
  return static_cast<int>(parsed);
}

}  // namespace

int dense_cap() { return cap_from_env("QITE_DENSE_CAP", kDefaultDenseCap); }
int state_cap() { return cap_from_env("QITE_STATE_CAP", kDefaultStateCap); }

StateVector::StateVector(int qubits) : qubits_(qubits) {
  if (qubits < 1) throw DimensionError("StateVector needs at least one qubit");
  if (qubits > state_cap()) {
    throw ResourceError("statevector of " + std::to_string(qubits) +
                        " qubits exceeds cap " + std::to_string(state_cap()) +
                        "; raise QITE_STATE_CAP to override");
  }
  amps_ = CVector::Zero(Index{1} << qubits);
  amps_[0] = 1.0;
}

StateVector::StateVector(int qubits, CVector amplitudes)
    : qubits_(qubits), amps_(std::move(amplitudes)) {
  if (qubits < 1) throw DimensionError("StateVector needs at least one qubit");
  if (qubits > state_cap()) {
    throw ResourceError("statevector of " + std::to_string(qubits) +
                        " qubits exceeds cap " + std::to_string(state_cap()) +
                        "; raise QITE_STATE_CAP to override");
  }
  if (amps_.size() != (Index{1} << qubits)) {
    throw DimensionError("StateVector: " + std::to_string(amps_.size()) +
                         " amplitudes for " + std::to_string(qubits) +
                         " qubits");
  }
}

Real StateVector::normalize() {
  if (amps_.cwiseAbs().maxCoeff() < 1e-300) {
    throw StateError("cannot normalize a zero-norm state");
  }
  const Real n = amps_.norm();
  amps_ /= n;
  return n;
}

void StateVector::require_normalized(Real tol) const {
  const Real n = norm();
  if (!(std::abs(n - 1.0) <= tol)) {
    throw StateError("state norm " + std::to_string(n) +
                     " deviates from 1 by more than " + std::to_string(tol));
  }
}

void require_same_register(const StateVector& a, const StateVector& b) {
  if (a.qubits() != b.qubits()) {
    throw DimensionError("register mismatch: " + std::to_string(a.qubits()) +
                         " vs " + std::to_string(b.qubits()) + " qubits");
  }
}

}  // namespace qite
