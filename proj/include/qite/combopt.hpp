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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qite/ite_exact.hpp"
#include "qite/pauli.hpp"
#include "qite/state.hpp"
#include "qite/state_vector.hpp"
#include "qite/varqite.hpp"

namespace qite {

/// Minimize sum_i linear_i x_i + sum_{i<j} quadratic(i,j) x_i x_j over
/// x in {0,1}^n. Only the strict upper triangle of `quadratic` is used.
struct QuboInstance {
  int n = 0;
  RVector linear;
  RMatrix quadratic;

  explicit QuboInstance(int variables = 0);

  void add_linear(int i, Real value);
  /// i == j folds into the linear part; i > j is rejected.
  void add_quadratic(int i, int j, Real value);

  /// Objective at the big-endian bitstring with basis index `x`
  /// (variable 0 is the most significant bit).
  Real evaluate(std::uint64_t x) const;
};

QuboInstance parse_qubo(std::istream& in);
QuboInstance parse_qubo(std::string_view text);
QuboInstance load_qubo(const std::filesystem::path& path);

/// Substitutes x_i = (1 - Z_i)/2. The identity term is always present so the
/// eigenvalue on |x> equals the objective at x.
Hamiltonian qubo_to_hamiltonian(const QuboInstance& q);

inline constexpr int kBruteForceCap = 20;

struct Minima {
  std::vector<std::string> bitstrings;
  Real value = 0.0;
  /// Smallest objective value above the minimum; absent for constant objectives.
  std::optional<Real> gap;
};

/// Exhaustive enumeration over 2^n assignments (n <= 20). Values within
/// 1e-12 * max(1, |min|) of the minimum count as optimal.
Minima brute_force_minima(const QuboInstance& q);

/// Total probability of the given bitstrings under |amps|^2.
Real success_probability(const StateVector& state,
                         const std::vector<std::string>& minima);

/// 1 / (1 + 2^Q mu^{-1} e^{-2 t gap}).
Real success_bound(int qubits, Real mu, Real gap, Real t);

/// Smallest t >= 0 with success_bound >= epsilon.
Real threshold_time(int qubits, Real mu, Real gap, Real epsilon);

/// 1 - (1 - epsilon)^shots.
Real shot_success(Real epsilon, std::uint64_t shots);

enum class Backend { kExact, kTrotter, kVarqite };

Backend parse_backend(std::string_view name);
std::string_view to_string(Backend backend);

struct CombinatorialOptions {
  Real epsilon = 0.5;
  std::uint64_t shots = 100;
  std::uint64_t seed = 0;
  Backend backend = Backend::kExact;
  Real delta = 0.01;  // Trotter / compiled step
  int repeats = 200;  // seeded sampling experiments
  int samples = 100;  // trace resolution for the exact backend
  StepOptions step;
};

struct SuccessReport {
  Real t = 0.0;
  Real p_measured = 0.0;
  Real p_bound = 0.0;
  Real epsilon = 0.0;
  std::uint64_t shots = 0;
  Real success_prob_shots = 0.0;  // 1 - (1 - p_measured)^S
  Real empirical_success = 0.0;   // fraction of repeats with a hit
  int repeats = 0;
  bool empirical_within_5_sigma = false;
  bool bound_ok = false;  // p_measured >= p_bound - 1e-9
  std::vector<std::string> minima;
  int mu = 0;
  std::optional<Real> gap;
  Real minimum_value = 0.0;
  std::uint64_t seed = 0;
  Backend backend = Backend::kExact;
  SampleCounts first_sample;  // repeat 0, seeded split_seed(seed, 0)
  EvolutionTrace trace;
};

/**
 * Evolves the equal superposition to threshold_time(n, mu, gap, epsilon)
 * with the chosen backend, measures the success probability against the
 * a-priori bound, and repeats seeded Z-basis sampling experiments to
 * estimate the S-shot success rate.
 */
SuccessReport run_combinatorial(const QuboInstance& q,
                                const CombinatorialOptions& options);

}  // namespace qite
