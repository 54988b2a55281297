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

#include "qite/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

namespace qite::homotopy {

RMatrix finite_difference_jacobian(const ResidualFn& residual,
                                   const RVector& x, Real step) {
  const RVector r0 = residual(x);
  RMatrix jac(r0.size(), x.size());
  RVector xp = x;
  for (Index j = 0; j < x.size(); ++j) {
    const Real h = step * std::max<Real>(1.0, std::abs(x[j]));
    xp[j] = x[j] + h;
    jac.col(j) = (residual(xp) - r0) / h;
    xp[j] = x[j];
  }
  return jac;
}

namespace {

RVector newton_direction(const RMatrix& jac, const RVector& r,
                         const NewtonOptions& options) {
  if (jac.rows() != jac.cols()) {
    throw DimensionError("newton_correct: Jacobian must be square");
  }
  RMatrix a = jac;
  if (options.regularization != 0) {
    a.diagonal().array() += options.regularization;
  }
  if (!a.allFinite()) throw SingularityError("Jacobian has non-finite entries");
  Eigen::PartialPivLU<RMatrix> lu(a);
  const Real rcond = lu.rcond();
  if (!(rcond > 0) || 1.0 / rcond > options.max_condition) {
    throw SingularityError("singular Jacobian (condition estimate " +
                           std::to_string(rcond > 0 ? 1.0 / rcond : INFINITY) +
                           ")");
  }
  return lu.solve(-r);
}

}  // namespace

NewtonResult newton_correct(const ResidualFn& residual,
                            const JacobianFn& jacobian, const RVector& x0,
                            const NewtonOptions& options) {
  NewtonResult out;
  out.x = x0;
  RVector r = residual(out.x);
  out.residual_norm = r.norm();
  out.residual_history.push_back(out.residual_norm);

  while (out.residual_norm > options.tol && out.iterations < options.max_iter) {
    const RMatrix jac = jacobian ? jacobian(out.x)
                                 : finite_difference_jacobian(residual, out.x);
    const RVector step = newton_direction(jac, r, options);

    Real scale = 1.0;
    bool accepted = false;
    for (int k = 0; k <= options.max_backtracks; ++k, scale *= 0.5) {
      const RVector trial = out.x + scale * step;
      const RVector r_trial = residual(trial);
      const Real n_trial = r_trial.norm();
      if (std::isfinite(n_trial) && n_trial < out.residual_norm) {
        out.x = trial;
        r = r_trial;
        out.residual_norm = n_trial;
        accepted = true;
        break;
      }
    }
    ++out.iterations;
    if (!accepted) break;
    out.residual_history.push_back(out.residual_norm);
  }
  out.converged = out.residual_norm <= options.tol;
  return out;
}

namespace {

RVector euler_predict(const PathResidualFn& residual,
                      const PathJacobianFn& jacobian, Real delta,
                      const RVector& x, Real step) {
  const Real h = 1e-7 * std::max<Real>(1.0, std::abs(delta));
  const RVector dh_ddelta = (residual(delta + h, x) - residual(delta, x)) / h;
  const RMatrix jac =
      jacobian ? jacobian(delta, x)
               : finite_difference_jacobian(
                     [&](const RVector& y) { return residual(delta, y); }, x);
  Eigen::PartialPivLU<RMatrix> lu(jac);
  return x - step * lu.solve(dh_ddelta);
}

}  // namespace

PathResult track_path(const PathResidualFn& residual,
                      const PathJacobianFn& jacobian, const RVector& x_at_zero,
                      Real delta_target, Real delta_min,
                      const PathOptions& options, const AcceptFn& on_accept) {
  if (!(delta_target >= 0)) {
    throw DomainError("track_path: delta_target must be non-negative");
  }
  const Real r0 = residual(0.0, x_at_zero).norm();
  if (!(r0 <= options.tol)) {
    throw DomainError("track_path: x_at_zero does not solve h(0, x) (residual " +
                      std::to_string(r0) + ")");
  }

  PathResult out{x_at_zero, {}};
  if (delta_target == 0) return out;
  if (!(delta_min > 0 && delta_min <= delta_target)) {
    throw DomainError("track_path: delta_min must lie in (0, delta_target]");
  }

  const Real max_step = options.max_step > 0 ? options.max_step : delta_target;
  Real step = options.initial_step > 0 ? options.initial_step : delta_target;
  step = std::min(step, max_step);
  Real delta = 0.0;
  NewtonOptions newton = options.newton;
  newton.tol = options.tol;

  while (delta < delta_target) {
    if (step < delta_min) {
      throw PathFailure("path tracking failed: sub-step " +
                            std::to_string(step) + " below delta_min " +
                            std::to_string(delta_min) + " at delta " +
                            std::to_string(delta),
                        out.diagnostics, out.x, delta);
    }
    const Real next = std::min(delta + step, delta_target);
    const Real taken = next - delta;

    NewtonResult corrected;
    bool ok = false;
    try {
      const RVector predicted =
          options.euler_predictor
              ? euler_predict(residual, jacobian, delta, out.x, taken)
              : out.x;
      corrected = newton_correct(
          [&](const RVector& x) { return residual(next, x); },
          jacobian ? JacobianFn([&](const RVector& x) { return jacobian(next, x); })
                   : JacobianFn{},
          predicted, newton);
      ok = corrected.converged;
    } catch (const SingularityError&) {
      ok = false;
    }

    if (!ok) {
      ++out.diagnostics.failures;
      step = taken / 2;
      continue;
    }
    delta = next;
    out.x = corrected.x;
    out.diagnostics.sub_steps.push_back(
        {delta, corrected.iterations, corrected.residual_norm});
    if (on_accept) on_accept(delta, out.x);
    step = std::min(2 * taken, max_step);
  }
  return out;
}

}  // namespace qite::homotopy
