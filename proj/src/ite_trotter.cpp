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

#include "qite/ite_trotter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qite/error.hpp"

namespace qite {

FactorResult factor_apply(const StateVector& state, const PauliTerm& term,
                          Real delta) {
  if (state.qubits() != term.string.qubits()) {
    throw DimensionError("factor_apply: register mismatch");
  }
  const Real x = delta * term.coefficient;
  if (!std::isfinite(x)) throw DomainError("factor_apply: delta*a not finite");
  StateVector out = state;
  if (x != 0) {
    CVector flipped = state.amplitudes();
    apply_pauli_inplace(term.string, flipped);
    out.amplitudes() = std::cosh(x) * state.amplitudes() - std::sinh(x) * flipped;
  }
  const Real n = out.norm();
  return {std::move(out), n};
}

LayerPlan plan_layers(Real t, Real delta) {
  if (!(t >= 0)) throw DomainError("imaginary time must be non-negative");
  if (!(delta > 0) || !std::isfinite(delta)) {
    throw DomainError("time step must be positive and finite");
  }
  LayerPlan plan;
  plan.layers = static_cast<int>(std::llround(t / delta));
  if (t > 0 && delta >= t) {
    plan.single_layer_warning = true;
    plan.layers = std::max(plan.layers, 1);
  }
  plan.residual_time = t - plan.layers * delta;
  return plan;
}

void init_trace(EvolutionTrace& trace, const StateVector& state0,
                const std::optional<Spectrum>& spec) {
  trace.f0 = std::numeric_limits<Real>::quiet_NaN();
  if (!spec) return;
  trace.target_level_begin = 0;
  trace.target_level_end = spec->ground_multiplicity;
  trace.f0 = std::min<Real>(1.0, fidelity(state0, *spec));
  trace.orthogonal_start = trace.f0 < kOrthogonalOverlap;
  trace.gap = spec->gap;
}

void record_sample(EvolutionTrace& trace, const StateVector& state,
                   const Hamiltonian& h, const std::optional<Spectrum>& spec,
                   Real t, Real log_norm) {
  const Real nan = std::numeric_limits<Real>::quiet_NaN();
  Real fid = nan;
  Real bound = nan;
  if (spec) {
    fid = fidelity(state, *spec);
    if (!trace.gap) {
      bound = 1.0;
    } else if (trace.f0 > 0) {
      bound = fidelity_lower_bound(trace.f0, *trace.gap, t);
    } else {
      bound = 0.0;
    }
  }
  trace.push(t, expectation(state, h), fid, gradient_norm_sq(state, h), bound,
             log_norm);
}

TrotterEvolution trotter_evolve(const StateVector& state0,
                                const Hamiltonian& h, Real t, Real delta) {
  std::optional<Spectrum> spec;
  if (h.qubits() <= dense_cap()) spec = eigendecompose(h);
  return trotter_evolve(state0, h, t, delta, spec);
}

TrotterEvolution trotter_evolve(const StateVector& state0,
                                const Hamiltonian& h, Real t, Real delta,
                                const std::optional<Spectrum>& spec) {
  if (state0.qubits() != h.qubits()) {
    throw DimensionError("trotter_evolve: register mismatch");
  }
  state0.require_normalized(1e-10);

  TrotterEvolution run{EvolutionTrace{}, state0, delta, plan_layers(t, delta),
                       0};
  init_trace(run.trace, state0, spec);

  StateVector& psi = run.final_state;
  Real log_norm = 0.0;
  record_sample(run.trace, psi, h, spec, 0.0, log_norm);
  for (int layer = 1; layer <= run.plan.layers; ++layer) {
    for (const auto& term : h.terms()) {
      FactorResult step = factor_apply(psi, term, delta);
      psi = std::move(step.state);
      log_norm += std::log(psi.normalize());
      ++run.factors_total;
    }
    record_sample(run.trace, psi, h, spec, layer * delta, log_norm);
  }
  return run;
}

}  // namespace qite
