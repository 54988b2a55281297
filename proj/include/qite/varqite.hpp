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
#include <optional>
#include <string>
#include <vector>

#include "qite/homotopy.hpp"
#include "qite/ite_exact.hpp"
#include "qite/ite_trotter.hpp"
#include "qite/pauli.hpp"
#include "qite/spectral.hpp"
#include "qite/state_vector.hpp"

namespace qite {

enum class GeneratorPolicy {
  /// Every non-identity Pauli string on the term support (4^w - 1 gates).
  kFull,
  /// Full set minus generators whose tangent column at theta = 0 depends on
  /// earlier ones for the current state.
  kReduced,
};

GeneratorPolicy parse_policy(std::string_view name);
std::string_view to_string(GeneratorPolicy policy);

/**
 * Ordered Pauli-rotation circuit C(theta) = R_{n-1}(theta_{n-1}) ... R_0(theta_0)
 * with R_j(x) = exp(-i x/2 P_j). Gate 0 acts first. All generators act
 * inside `support_mask`; theta = 0 is the identity.
 */
class ParametricCircuit {
 public:
  ParametricCircuit() = default;
  ParametricCircuit(int qubits, std::uint64_t support_mask,
                    std::vector<PauliString> generators);

  int qubits() const noexcept { return qubits_; }
  std::uint64_t support_mask() const noexcept { return support_; }
  const std::vector<PauliString>& generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool empty() const noexcept { return gens_.empty(); }

  /// C(theta) applied in place.
  void apply(const RVector& theta, CVector& amps) const;
  StateVector apply(const RVector& theta, const StateVector& state) const;

 private:
  int qubits_ = 0;
  std::uint64_t support_ = 0;
  std::vector<PauliString> gens_;
};

/// Half-angle coordinates s_j = sin(theta_j/2), c_j = cos(theta_j/2).
struct TrigPoint {
  RVector s;
  RVector c;

  static TrigPoint from_angles(const RVector& theta);
  RVector angles() const;
  /// max_j |s_j^2 + c_j^2 - 1|.
  Real constraint_violation() const;
};

/// All 4^w - 1 non-identity strings on the term's support, ordered
/// lexicographically with I < X < Y < Z. The identity term yields an empty
/// circuit.
ParametricCircuit build_ansatz(const PauliTerm& term);

/// Indices of generators kept by greedy independence of the tangent columns
/// -i/2 P_j |psi> (as real vectors), tested against relative tolerance `tol`.
std::vector<int> independent_generators(const ParametricCircuit& circuit,
                                        const StateVector& state,
                                        Real tol = 1e-8);

/**
 * Re Omega and its parameter-shift derivatives for one compiled step.
 *
 * Omega(delta, theta) = <psi|(cosh(delta a) - sinh(delta a) S) C(theta)|psi>.
 * Shifted circuits are evaluated exactly from cached prefix states
 * C_{<j}|psi> and suffix bras, so a gradient costs O(n 2^Q) and a Hessian
 * O(n^2 2^Q).
 */
class StepObjective {
 public:
  StepObjective(const StateVector& state, const PauliTerm& term,
                const ParametricCircuit& circuit);

  void set_delta(Real delta);
  Real delta() const noexcept { return delta_; }

  /// ||(cosh(delta a) - sinh(delta a) S)|psi>||.
  Real target_norm() const;

  Complex omega(const RVector& theta) const;

  /// Omega is linear in each half-angle gate, so Re Omega is a trig
  /// polynomial in theta_j / 2 and the exact shift rule is
  /// d Re Omega / d theta_j = [Re Omega(theta_j + pi) - Re Omega(theta_j - pi)] / 4.
  RVector gradient(const RVector& theta) const;

  /// The same rule applied twice: off-diagonal entries from the four
  /// (+-pi, +-pi) shifts over 16, diagonal -Re Omega / 4.
  RMatrix hessian(const RVector& theta) const;

  /// Re Omega / target_norm, in [-1, 1].
  Real step_fidelity(const RVector& theta) const;

 private:
  struct Cache;
  Cache build_cache(const RVector& theta) const;

  const ParametricCircuit& circuit_;
  CVector psi_;
  CVector s_psi_;
  Real coefficient_;
  Real delta_ = 0.0;
  CVector target_;  // (cosh - sinh S)|psi>
};

/// Direct simulation of Omega (no caching); the reference path.
Complex omega(const StateVector& state, Real delta, const PauliTerm& term,
              const ParametricCircuit& circuit, const RVector& theta);
RVector omega_gradient(const StateVector& state, Real delta,
                       const PauliTerm& term, const ParametricCircuit& circuit,
                       const RVector& theta);
RMatrix omega_hessian(const StateVector& state, Real delta,
                      const PauliTerm& term, const ParametricCircuit& circuit,
                      const RVector& theta);

struct StepOptions {
  Real tol = 1e-9;  // on ||grad Re Omega||
  int max_iter = 50;
  GeneratorPolicy policy = GeneratorPolicy::kFull;
  Real rank_tol = 1e-8;
  Real regularization = 1e-12;
  /// Continuation floor as a fraction of delta_target.
  Real delta_min_fraction = 1.0 / 1024;
  bool euler_predictor = false;
};

struct StepSolution {
  RVector theta;
  bool converged = false;
  int iterations = 0;
  Real gradient_norm = 0.0;
  Real step_fidelity = 0.0;
  Complex omega{0.0, 0.0};
  std::vector<int> active;  // optimized gate indices; the rest stay at 0
  bool pruned = false;      // generators were dropped for rank deficiency
};

/// Active gate set for `policy` on this state: all gates for kFull unless the
/// tangent columns are rank deficient, in which case the reduced set.
std::vector<int> select_active(const ParametricCircuit& circuit,
                               const StateVector& state,
                               const StepOptions& options, bool* pruned);

/// Damped Newton on grad Re Omega = 0 from `init_theta`.
StepSolution solve_step(const StateVector& state, Real delta,
                        const PauliTerm& term, const ParametricCircuit& circuit,
                        const RVector& init_theta,
                        const StepOptions& options = {});

struct ContinuationResult {
  StepSolution solution;
  homotopy::PathDiagnostics path;
  std::vector<Real> sub_step_fidelity;  // one per accepted sub-step
};

/// Tracks the stationary point of Re Omega from (delta = 0, theta = 0) to
/// delta_target. Throws homotopy::PathFailure when the sub-step drops below
/// delta_target * options.delta_min_fraction.
ContinuationResult continuation_solve(const StateVector& state,
                                      const PauliTerm& term,
                                      const ParametricCircuit& circuit,
                                      Real delta_target,
                                      const StepOptions& options = {});

struct CompiledStep {
  int layer = 0;
  int term_index = 0;
  ParametricCircuit circuit;
  RVector angles;
  Real step_fidelity = 1.0;
  int newton_iters = 0;
  int sub_steps = 0;
  std::vector<int> active;
  bool pruned = false;
};

struct CompiledEvolution {
  std::vector<CompiledStep> steps;  // ordered by (layer, term_index)
  std::size_t total_gates = 0;

  /// Plain-text gate list, one `R(<pauli-string>, <angle>)` per line.
  std::string gate_list() const;
};

struct CompileResult {
  CompiledEvolution compiled;
  StateVector final_state;
  EvolutionTrace trace;
  LayerPlan plan;
  Real delta = 0.0;
};

class CompileFailure : public Error {
 public:
  CompileFailure(const std::string& what, CompileResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const CompileResult& partial() const noexcept { return partial_; }

 private:
  CompileResult partial_;
};

/**
 * Compiles round(t/delta) Trotter layers into Pauli-rotation circuits. Each
 * step is solved against the current simulated state and then applied
 * unitarily. Throws CompileFailure (carrying the partial artifact) when a
 * continuation fails.
 */
CompileResult compile_evolution(const StateVector& state0,
                                const Hamiltonian& h, Real t, Real delta,
                                const StepOptions& options = {});
CompileResult compile_evolution(const StateVector& state0,
                                const Hamiltonian& h, Real t, Real delta,
                                const StepOptions& options,
                                const std::optional<Spectrum>& spec);

}  // namespace qite
