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

#include <functional>
#include <vector>

#include "qite/error.hpp"
#include "qite/types.hpp"

namespace qite::homotopy {

using ResidualFn = std::function<RVector(const RVector&)>;
using JacobianFn = std::function<RMatrix(const RVector&)>;

/// Forward-difference Jacobian of `residual` at x.
RMatrix finite_difference_jacobian(const ResidualFn& residual,
                                   const RVector& x, Real step = 1e-6);

struct NewtonOptions {
  Real tol = 1e-12;
  int max_iter = 50;
  int max_backtracks = 20;
  Real max_condition = 1e12;
  /// Added to the Jacobian diagonal before every solve.
  Real regularization = 0.0;
};

struct NewtonResult {
  RVector x;  // best iterate
  bool converged = false;
  int iterations = 0;
  Real residual_norm = 0.0;
  std::vector<Real> residual_history;  // one entry per accepted iterate
};

/**
 * Damped Newton corrector. Each full step is halved up to
 * `max_backtracks` times until the residual norm decreases; if none does the
 * solve stops unconverged with the best iterate. A Jacobian whose condition
 * estimate exceeds `max_condition` throws SingularityError. A null
 * `jacobian` selects the finite-difference fallback.
 */
NewtonResult newton_correct(const ResidualFn& residual,
                            const JacobianFn& jacobian, const RVector& x0,
                            const NewtonOptions& options = {});

using PathResidualFn = std::function<RVector(Real, const RVector&)>;
using PathJacobianFn = std::function<RMatrix(Real, const RVector&)>;

struct SubStep {
  Real delta = 0.0;
  int iterations = 0;
  Real residual_norm = 0.0;
};

struct PathDiagnostics {
  std::vector<SubStep> sub_steps;  // accepted, delta strictly increasing
  int failures = 0;                // step halvings
};

struct PathOptions {
  Real tol = 1e-10;
  NewtonOptions newton;
  /// First-order tangent predictor instead of reusing the previous point.
  bool euler_predictor = false;
  /// First attempted sub-step; 0 means try delta_target in one go.
  Real initial_step = 0.0;
  /// Accepted sub-steps double the next attempt, capped at this (0: target).
  Real max_step = 0.0;
};

class PathFailure : public Error {
 public:
  PathFailure(const std::string& what, PathDiagnostics diagnostics, RVector x,
              Real delta_reached)
      : Error(what),
        diagnostics_(std::move(diagnostics)),
        x_(std::move(x)),
        delta_reached_(delta_reached) {}

  const PathDiagnostics& diagnostics() const noexcept { return diagnostics_; }
  const RVector& last_solution() const noexcept { return x_; }
  Real delta_reached() const noexcept { return delta_reached_; }

 private:
  PathDiagnostics diagnostics_;
  RVector x_;
  Real delta_reached_;
};

struct PathResult {
  RVector x;
  PathDiagnostics diagnostics;
};

/// Called after every accepted sub-step with (delta, solution).
using AcceptFn = std::function<void(Real, const RVector&)>;

/**
 * Tracks the root of h(delta, x) = 0 from (0, x_at_zero) to delta_target.
 * Sub-steps grow delta monotonically; a Newton failure (no convergence or a
 * singular Jacobian) halves the step, and a step below delta_min throws
 * PathFailure. `x_at_zero` must solve h(0, .) within tol.
 */
PathResult track_path(const PathResidualFn& residual,
                      const PathJacobianFn& jacobian, const RVector& x_at_zero,
                      Real delta_target, Real delta_min,
                      const PathOptions& options = {},
                      const AcceptFn& on_accept = {});

}  // namespace qite::homotopy
