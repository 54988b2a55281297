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

#include <cstddef>
#include <optional>

#include "qite/ite_exact.hpp"
#include "qite/pauli.hpp"
#include "qite/spectral.hpp"
#include "qite/state_vector.hpp"

namespace qite {

struct FactorResult {
  StateVector state;  // unnormalized
  Real norm = 1.0;
};

/// e^{-delta a S}|psi> = cosh(delta a)|psi> - sinh(delta a) S|psi>, left
/// unnormalized.
FactorResult factor_apply(const StateVector& state, const PauliTerm& term,
                          Real delta);

/// Layer bookkeeping shared by the Trotter and compiled backends.
struct LayerPlan {
  int layers = 0;
  Real residual_time = 0.0;  // t - layers * delta, not evolved
  bool single_layer_warning = false;  // delta >= t, one layer covers it all
};

LayerPlan plan_layers(Real t, Real delta);

struct TrotterEvolution {
  EvolutionTrace trace;
  StateVector final_state;
  Real delta = 0.0;
  LayerPlan plan;
  std::size_t factors_total = 0;
};

/**
 * First-order Trotterized ITE: round(t/delta) layers, each applying
 * e^{-delta a_i S_i} for every term in Hamiltonian order, renormalizing
 * after every factor. The trace is sampled once per layer (including the
 * start). Fidelity columns need a spectrum; the overload without one
 * decomposes H when it fits under the dense cap and writes NaN otherwise.
 */
TrotterEvolution trotter_evolve(const StateVector& state0,
                                const Hamiltonian& h, Real t, Real delta);
TrotterEvolution trotter_evolve(const StateVector& state0,
                                const Hamiltonian& h, Real t, Real delta,
                                const std::optional<Spectrum>& spec);

/// Fills one trace row for `state` at time t against an optional spectrum.
/// f0 and the gap for the bound column are taken from the trace header.
void record_sample(EvolutionTrace& trace, const StateVector& state,
                   const Hamiltonian& h, const std::optional<Spectrum>& spec,
                   Real t, Real log_norm);

/// Initializes trace header fields (f0, gap, target level) for a start state.
void init_trace(EvolutionTrace& trace, const StateVector& state0,
                const std::optional<Spectrum>& spec);

}  // namespace qite
