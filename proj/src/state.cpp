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

#include "qite/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qite/error.hpp"

namespace qite {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string index_to_bits(std::uint64_t index, int qubits) {
  std::string s(qubits, '0');
  for (int q = 0; q < qubits; ++q) {
    if (index & (std::uint64_t{1} << (qubits - 1 - q))) s[q] = '1';
  }
  return s;
}

std::uint64_t bits_to_index(std::string_view bits) {
  std::uint64_t index = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != '0' && bits[k] != '1') {
      throw ParseError("invalid bit '" + std::string(1, bits[k]) +
                           "' at position " + std::to_string(k),
                       0, k);
    }
    index = (index << 1) | static_cast<std::uint64_t>(bits[k] == '1');
  }
  return index;
}

StateVector basis_state(int qubits, std::string_view bits) {
  if (static_cast<int>(bits.size()) != qubits) {
    throw DimensionError("basis_state: bitstring '" + std::string(bits) +
                         "' does not have length " + std::to_string(qubits));
  }
  StateVector psi(qubits);
  psi[0] = 0.0;
  psi[static_cast<Index>(bits_to_index(bits))] = 1.0;
  return psi;
}

StateVector equal_superposition(int qubits) {
  StateVector psi(qubits);
  psi.amplitudes().setConstant(Complex(std::pow(2.0, -0.5 * qubits), 0.0));
  return psi;
}

StateVector random_state(int qubits, std::uint64_t seed, bool real_only) {
  StateVector psi(qubits);
  std::mt19937_64 rng(split_seed(seed, 0));
  std::normal_distribution<Real> gauss;
  for (Index i = 0; i < psi.dim(); ++i) {
    const Real re = gauss(rng);
    const Real im = real_only ? 0.0 : gauss(rng);
    psi[i] = Complex(re, im);
  }
  psi.normalize();
  return psi;
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_register(a, b);
  return a.amplitudes().dot(b.amplitudes());
}

StateVector apply_rotation(const StateVector& state,
                           const PauliString& generator, Real theta) {
  if (state.qubits() != generator.qubits()) {
    throw DimensionError("apply_rotation: register mismatch");
  }
  StateVector out = state;
  apply_rotation_inplace(generator, theta, out.amplitudes());
  return out;
}

SampleCounts sample_z(const StateVector& state, std::uint64_t shots,
                      std::uint64_t seed) {
  if (shots < 1) throw DomainError("sample_z: shots must be at least 1");
  state.require_normalized(1e-6);

  std::vector<Real> cdf(static_cast<std::size_t>(state.dim()));
  Real acc = 0;
  for (Index i = 0; i < state.dim(); ++i) {
    acc += std::norm(state[i]);
    cdf[static_cast<std::size_t>(i)] = acc;
  }

  std::mt19937_64 rng(split_seed(seed, 1));
  SampleCounts out;
  out.shots = shots;
  out.seed = seed;
  std::vector<std::uint64_t> hits(cdf.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53 random mantissa bits, uniform on [0, total).
    const Real u = static_cast<Real>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++hits[static_cast<std::size_t>(it - cdf.begin())];
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] > 0) out.counts[index_to_bits(i, state.qubits())] = hits[i];
  }
  return out;
}

}  // namespace qite
