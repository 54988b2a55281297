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

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "qite/pauli.hpp"
#include "qite/state_vector.hpp"

namespace qite {

/// Z-basis measurement record. Keys are big-endian bitstrings of length Q.
struct SampleCounts {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> counts;
};

/// splitmix64 finalizer; derives independent child seeds from one seed.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

std::string index_to_bits(std::uint64_t index, int qubits);
std::uint64_t bits_to_index(std::string_view bits);

StateVector basis_state(int qubits, std::string_view bits);

/// All amplitudes equal to 2^{-Q/2}.
StateVector equal_superposition(int qubits);

/// Haar-like random state: i.i.d. complex Gaussian amplitudes, normalized.
/// With `real_only`, imaginary parts are zero.
StateVector random_state(int qubits, std::uint64_t seed,
                         bool real_only = false);

/// <a|b>, conjugating `a`.
Complex inner(const StateVector& a, const StateVector& b);

/// exp(-i theta/2 P) applied in place.
template <typename Derived>
void apply_rotation_inplace(const PauliString& generator, Real theta,
                            Eigen::MatrixBase<Derived>& amps) {
  using Scalar = typename Derived::Scalar;
  const Real c = std::cos(theta / 2);
  const Real s = std::sin(theta / 2);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> flipped = amps;
  apply_pauli_inplace(generator, flipped);
  amps.derived() = c * amps.derived() - Scalar(0, s) * flipped;
}

/// exp(-i theta/2 P)|psi> = cos(theta/2)|psi> - i sin(theta/2) P|psi>.
StateVector apply_rotation(const StateVector& state,
                           const PauliString& generator, Real theta);

/// `shots` i.i.d. draws from |amps|^2, reproducible for a given seed.
/// A norm deviation above 1e-6 throws StateError.
SampleCounts sample_z(const StateVector& state, std::uint64_t shots,
                      std::uint64_t seed);

}  // namespace qite
