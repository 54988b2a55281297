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

#include "qite/varqite.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "qite/error.hpp"
#include "qite/state.hpp"

namespace qite {

namespace {

constexpr Real kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Complex rotated_overlap(Real angle, Complex plain, Complex flipped) {
  // <b| (cos(angle/2) - i sin(angle/2) P) |f> from <b|f> and <b|P f>.
  return std::cos(angle / 2) * plain - kI * std::sin(angle / 2) * flipped;
}

}  // namespace

GeneratorPolicy parse_policy(std::string_view name) {
  if (name == "full") return GeneratorPolicy::kFull;
  if (name == "reduced") return GeneratorPolicy::kReduced;
  throw InputError("unknown generator policy '" + std::string(name) +
                   "' (expected full or reduced)");
}

std::string_view to_string(GeneratorPolicy policy) {
  return policy == GeneratorPolicy::kFull ? "full" : "reduced";
}

ParametricCircuit::ParametricCircuit(int qubits, std::uint64_t support_mask,
                                     std::vector<PauliString> generators)
    : qubits_(qubits), support_(support_mask), gens_(std::move(generators)) {
  for (const auto& g : gens_) {
    if (g.qubits() != qubits) {
      throw DimensionError("circuit generator on wrong register");
    }
    if ((g.support_mask() & ~support_mask) != 0) {
      throw InputError("generator " + g.to_string() +
                       " acts outside the circuit support");
    }
  }
}

void ParametricCircuit::apply(const RVector& theta, CVector& amps) const {
  if (theta.size() != static_cast<Index>(gens_.size())) {
    throw DimensionError("circuit has " + std::to_string(gens_.size()) +
                         " gates but " + std::to_string(theta.size()) +
                         " angles were given");
  }
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    if (theta[static_cast<Index>(j)] != 0) {
      apply_rotation_inplace(gens_[j], theta[static_cast<Index>(j)], amps);
    }
  }
}

StateVector ParametricCircuit::apply(const RVector& theta,
                                     const StateVector& state) const {
  if (state.qubits() != qubits_ && !gens_.empty()) {
    throw DimensionError("circuit/state register mismatch");
  }
  StateVector out = state;
  apply(theta, out.amplitudes());
  return out;
}

TrigPoint TrigPoint::from_angles(const RVector& theta) {
  return {(theta.array() / 2).sin().matrix(),
          (theta.array() / 2).cos().matrix()};
}

RVector TrigPoint::angles() const {
  RVector theta(s.size());
  for (Index j = 0; j < s.size(); ++j) theta[j] = 2 * std::atan2(s[j], c[j]);
  return theta;
}

Real TrigPoint::constraint_violation() const {
  if (s.size() == 0) return 0.0;
  return (s.array().square() + c.array().square() - 1).abs().maxCoeff();
}

ParametricCircuit build_ansatz(const PauliTerm& term) {
  const PauliString& p = term.string;
  const std::vector<int> support = p.support();
  const int w = static_cast<int>(support.size());
  std::vector<PauliString> gens;
  if (w == 0) return ParametricCircuit(p.qubits(), 0, {});
  if (w > 16) throw ResourceError("ansatz support too large");

  const std::uint64_t count = std::uint64_t{1} << (2 * w);
  gens.reserve(count - 1);
  for (std::uint64_t code = 1; code < count; ++code) {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (int k = 0; k < w; ++k) {
      // Digit k (most significant first) is the Pauli on support[k].
      const auto digit = (code >> (2 * (w - 1 - k))) & 3;
      const std::uint64_t m = p.bit(support[k]);
      if (digit == 1 || digit == 2) x |= m;
      if (digit == 2 || digit == 3) z |= m;
    }
    gens.emplace_back(p.qubits(), x, z);
  }
  return ParametricCircuit(p.qubits(), p.support_mask(), std::move(gens));
}

std::vector<int> independent_generators(const ParametricCircuit& circuit,
                                        const StateVector& state, Real tol) {
  const Index dim = state.dim();
  std::vector<RVector> basis;
  std::vector<int> kept;
  for (std::size_t j = 0; j < circuit.size(); ++j) {
    CVector col = state.amplitudes();
    apply_pauli_inplace(circuit.generators()[j], col);
    col *= Complex(0.0, -0.5);
    RVector v(2 * dim);
    v.head(dim) = col.real();
    v.tail(dim) = col.imag();
    const Real original = v.norm();
    for (const auto& b : basis) v -= b.dot(v) * b;
    for (const auto& b : basis) v -= b.dot(v) * b;
    const Real residual = v.norm();
    if (residual > tol * original) {
      basis.push_back(v / residual);
      kept.push_back(static_cast<int>(j));
    }
  }
  return kept;
}

struct StepObjective::Cache {
  std::vector<CVector> prefix;  // state entering gate j
  std::vector<CVector> bra;     // Omega = <bra_j| R_j prefix_j>
  std::vector<Complex> plain;   // <bra_j|prefix_j>
  std::vector<Complex> flipped; // <bra_j|P_j prefix_j>
};

StepObjective::StepObjective(const StateVector& state, const PauliTerm& term,
                             const ParametricCircuit& circuit)
    : circuit_(circuit),
      psi_(state.amplitudes()),
      s_psi_(state.amplitudes()),
      coefficient_(term.coefficient) {
  if (state.qubits() != term.string.qubits() ||
      (!circuit.empty() && circuit.qubits() != state.qubits())) {
    throw DimensionError("step objective: register mismatch");
  }
  state.require_normalized(1e-8);
  apply_pauli_inplace(term.string, s_psi_);
  set_delta(0.0);
}

void StepObjective::set_delta(Real delta) {
  const Real x = delta * coefficient_;
  if (!std::isfinite(x)) throw DomainError("delta*a not finite");
  delta_ = delta;
  target_ = std::cosh(x) * psi_ - std::sinh(x) * s_psi_;
}

Real StepObjective::target_norm() const { return target_.norm(); }

Complex StepObjective::omega(const RVector& theta) const {
  CVector out = psi_;
  circuit_.apply(theta, out);
  return target_.dot(out);
}

Real StepObjective::step_fidelity(const RVector& theta) const {
  return omega(theta).real() / target_norm();
}

StepObjective::Cache StepObjective::build_cache(const RVector& theta) const {
  const auto n = circuit_.size();
  if (theta.size() != static_cast<Index>(n)) {
    throw DimensionError("angle vector does not match circuit");
  }
  const auto& gens = circuit_.generators();
  Cache c;
  c.prefix.resize(n);
  c.bra.resize(n);
  c.plain.resize(n);
  c.flipped.resize(n);
  CVector v = psi_;
  for (std::size_t j = 0; j < n; ++j) {
    c.prefix[j] = v;
    apply_rotation_inplace(gens[j], theta[static_cast<Index>(j)], v);
  }
  v = target_;
  for (std::size_t j = n; j-- > 0;) {
    c.bra[j] = v;
    apply_rotation_inplace(gens[j], -theta[static_cast<Index>(j)], v);
  }
  for (std::size_t j = 0; j < n; ++j) {
    CVector pf = c.prefix[j];
    apply_pauli_inplace(gens[j], pf);
    c.plain[j] = c.bra[j].dot(c.prefix[j]);
    c.flipped[j] = c.bra[j].dot(pf);
  }
  return c;
}

RVector StepObjective::gradient(const RVector& theta) const {
  const Cache c = build_cache(theta);
  RVector g(theta.size());
  for (Index j = 0; j < theta.size(); ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const Real plus =
        rotated_overlap(theta[j] + kPi, c.plain[sj], c.flipped[sj]).real();
    const Real minus =
        rotated_overlap(theta[j] - kPi, c.plain[sj], c.flipped[sj]).real();
    g[j] = (plus - minus) / 4;
  }
  return g;
}

RMatrix StepObjective::hessian(const RVector& theta) const {
  const Cache c = build_cache(theta);
  const auto& gens = circuit_.generators();
  const Index n = theta.size();
  RMatrix hess(n, n);
  const Real base = c.plain.empty()
                        ? 0.0
                        : rotated_overlap(theta[0], c.plain[0], c.flipped[0]).real();
  // Re Omega is a + b cos(theta_j/2) + ... so d^2/dtheta_j^2 = -Re Omega / 4.
  for (Index j = 0; j < n; ++j) hess(j, j) = -base / 4;

  // Off-diagonal (j < k): the shifted circuit is
  //   <bra_k| R_k(theta_k + r) U_{k-1}..U_{j+1} R_j(theta_j + s) |prefix_j>,
  // and R_j(theta_j + s)|prefix_j> is linear in u = prefix_j, v = P_j prefix_j.
  std::vector<CVector> p_bra(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    const auto sk = static_cast<std::size_t>(k);
    p_bra[sk] = c.bra[sk];
    apply_pauli_inplace(gens[sk], p_bra[sk]);
  }
  const Real shifts[2] = {kPi, -kPi};
  for (Index j = 0; j + 1 < n; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    CVector u = c.prefix[sj];
    CVector v = u;
    apply_pauli_inplace(gens[sj], v);
    for (Index k = j + 1; k < n; ++k) {
      const auto sk = static_cast<std::size_t>(k);
      if (k > j + 1) {
        apply_rotation_inplace(gens[sk - 1], theta[k - 1], u);
        apply_rotation_inplace(gens[sk - 1], theta[k - 1], v);
      }
      const Complex bu = c.bra[sk].dot(u);
      const Complex bv = c.bra[sk].dot(v);
      const Complex pu = p_bra[sk].dot(u);
      const Complex pv = p_bra[sk].dot(v);
      Real acc = 0;
      for (int a = 0; a < 2; ++a) {
        const Complex plain = rotated_overlap(theta[j] + shifts[a], bu, bv);
        const Complex flipped = rotated_overlap(theta[j] + shifts[a], pu, pv);
        for (int b = 0; b < 2; ++b) {
          const Real value =
              rotated_overlap(theta[k] + shifts[b], plain, flipped).real();
          acc += (a == b ? 1.0 : -1.0) * value;
        }
      }
      hess(j, k) = acc / 16;
      hess(k, j) = acc / 16;
    }
  }
  return hess;
}

Complex omega(const StateVector& state, Real delta, const PauliTerm& term,
              const ParametricCircuit& circuit, const RVector& theta) {
  if (state.qubits() != term.string.qubits() ||
      (!circuit.empty() && circuit.qubits() != state.qubits())) {
    throw DimensionError("omega: register mismatch");
  }
  state.require_normalized(1e-8);
  const FactorResult target = factor_apply(state, term, delta);
  const StateVector moved = circuit.apply(theta, state);
  return inner(target.state, moved);
}

RVector omega_gradient(const StateVector& state, Real delta,
                       const PauliTerm& term, const ParametricCircuit& circuit,
                       const RVector& theta) {
  RVector g(theta.size());
  RVector shifted = theta;
  for (Index j = 0; j < theta.size(); ++j) {
    shifted[j] = theta[j] + kPi;
    const Real plus = omega(state, delta, term, circuit, shifted).real();
    shifted[j] = theta[j] - kPi;
    const Real minus = omega(state, delta, term, circuit, shifted).real();
    shifted[j] = theta[j];
    g[j] = (plus - minus) / 4;
  }
  return g;
}

RMatrix omega_hessian(const StateVector& state, Real delta,
                      const PauliTerm& term, const ParametricCircuit& circuit,
                      const RVector& theta) {
  const Index n = theta.size();
  RMatrix hess(n, n);
  const Real base = omega(state, delta, term, circuit, theta).real();
  RVector x = theta;
  for (Index j = 0; j < n; ++j) {
    // Shift rule applied twice: [f(+2pi) - 2 f + f(-2pi)] / 16.
    x[j] = theta[j] + 2 * kPi;
    Real diag = omega(state, delta, term, circuit, x).real() - 2 * base;
    x[j] = theta[j] - 2 * kPi;
    diag += omega(state, delta, term, circuit, x).real();
    hess(j, j) = diag / 16;
    x[j] = theta[j];
    for (Index k = j + 1; k < n; ++k) {
      Real acc = 0;
      for (int a : {1, -1}) {
        for (int b : {1, -1}) {
          x[j] = theta[j] + a * kPi;
          x[k] = theta[k] + b * kPi;
          acc += a * b * omega(state, delta, term, circuit, x).real();
        }
      }
      x[j] = theta[j];
      x[k] = theta[k];
      hess(j, k) = acc / 16;
      hess(k, j) = acc / 16;
    }
  }
  return hess;
}

std::vector<int> select_active(const ParametricCircuit& circuit,
                               const StateVector& state,
                               const StepOptions& options, bool* pruned) {
  // kFull keeps every gate unless the tangent columns are rank deficient;
  // then it falls back to the reduced set, which kReduced always uses.
  std::vector<int> active =
      independent_generators(circuit, state, options.rank_tol);
  if (pruned != nullptr) *pruned = active.size() < circuit.size();
  return active;
}

namespace {

struct ActiveProblem {
  StepObjective& objective;
  const std::vector<int>& active;
  RVector base;  // full angle vector; inactive entries stay fixed
  Real regularization;

  RVector embed(const RVector& x) const {
    RVector theta = base;
    for (std::size_t i = 0; i < active.size(); ++i) {
      theta[active[i]] = x[static_cast<Index>(i)];
    }
    return theta;
  }

  RVector restrict(const RVector& full) const {
    RVector x(static_cast<Index>(active.size()));
    for (std::size_t i = 0; i < active.size(); ++i) {
      x[static_cast<Index>(i)] = full[active[i]];
    }
    return x;
  }

  RVector residual(const RVector& x) const {
    return restrict(objective.gradient(embed(x)));
  }

  RMatrix jacobian(const RVector& x) const {
    const RMatrix full = objective.hessian(embed(x));
    const auto m = static_cast<Index>(active.size());
    RMatrix jac(m, m);
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) {
        jac(a, b) = full(active[static_cast<std::size_t>(a)],
                         active[static_cast<std::size_t>(b)]);
      }
    }
    // Stationary points of interest are maxima; shift away from zero.
    jac.diagonal().array() -= regularization;
    return jac;
  }
};

void finish_solution(StepSolution& sol, const StepObjective& objective) {
  const RVector g = objective.gradient(sol.theta);
  Real gn = 0;
  for (int j : sol.active) gn += g[j] * g[j];
  sol.gradient_norm = std::sqrt(gn);
  sol.omega = objective.omega(sol.theta);
  sol.step_fidelity = sol.omega.real() / objective.target_norm();
}

}  // namespace

StepSolution solve_step(const StateVector& state, Real delta,
                        const PauliTerm& term, const ParametricCircuit& circuit,
                        const RVector& init_theta, const StepOptions& options) {
  if (!(options.tol > 0)) throw DomainError("solve_step: tol must be positive");
  if (init_theta.size() != static_cast<Index>(circuit.size())) {
    throw DimensionError("solve_step: init_theta does not match circuit");
  }
  StepObjective objective(state, term, circuit);
  objective.set_delta(delta);

  StepSolution sol;
  sol.active = select_active(circuit, state, options, &sol.pruned);
  sol.theta = init_theta;

  ActiveProblem problem{objective, sol.active, init_theta,
                        options.regularization};
  homotopy::NewtonOptions newton;
  newton.tol = options.tol;
  newton.max_iter = options.max_iter;
  try {
    const homotopy::NewtonResult res = homotopy::newton_correct(
        [&](const RVector& x) { return problem.residual(x); },
        [&](const RVector& x) { return problem.jacobian(x); },
        problem.restrict(init_theta), newton);
    sol.theta = problem.embed(res.x);
    sol.iterations = res.iterations;
    sol.converged = res.converged;
  } catch (const SingularityError&) {
    sol.converged = false;
  }
  finish_solution(sol, objective);
  return sol;
}

ContinuationResult continuation_solve(const StateVector& state,
                                      const PauliTerm& term,
                                      const ParametricCircuit& circuit,
                                      Real delta_target,
                                      const StepOptions& options) {
  if (!(delta_target >= 0)) {
    throw DomainError("continuation_solve: delta_target must be non-negative");
  }
  StepObjective objective(state, term, circuit);
  ContinuationResult out;
  StepSolution& sol = out.solution;
  sol.active = select_active(circuit, state, options, &sol.pruned);
  sol.theta = RVector::Zero(static_cast<Index>(circuit.size()));

  ActiveProblem problem{objective, sol.active, sol.theta,
                        options.regularization};
  homotopy::PathOptions path;
  path.tol = options.tol;
  path.newton.max_iter = options.max_iter;
  path.euler_predictor = options.euler_predictor;

  const auto residual = [&](Real delta, const RVector& x) {
    objective.set_delta(delta);
    return problem.residual(x);
  };
  const auto jacobian = [&](Real delta, const RVector& x) {
    objective.set_delta(delta);
    return problem.jacobian(x);
  };
  const auto on_accept = [&](Real delta, const RVector& x) {
    objective.set_delta(delta);
    out.sub_step_fidelity.push_back(objective.step_fidelity(problem.embed(x)));
  };

  const homotopy::PathResult tracked = homotopy::track_path(
      residual, jacobian, problem.restrict(sol.theta), delta_target,
      delta_target * options.delta_min_fraction, path, on_accept);
  out.path = tracked.diagnostics;
  sol.theta = problem.embed(tracked.x);
  sol.converged = true;
  for (const auto& sub : out.path.sub_steps) sol.iterations += sub.iterations;
  objective.set_delta(delta_target);
  finish_solution(sol, objective);
  return out;
}

std::string CompiledEvolution::gate_list() const {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& step : steps) {
    const auto& gens = step.circuit.generators();
    for (std::size_t j = 0; j < gens.size(); ++j) {
      out << "R(" << gens[j].to_string() << ", "
          << step.angles[static_cast<Index>(j)] << ")\n";
    }
  }
  return out.str();
}

CompileResult compile_evolution(const StateVector& state0,
                                const Hamiltonian& h, Real t, Real delta,
                                const StepOptions& options) {
  std::optional<Spectrum> spec;
  if (h.qubits() <= dense_cap()) spec = eigendecompose(h);
  return compile_evolution(state0, h, t, delta, options, spec);
}

CompileResult compile_evolution(const StateVector& state0,
                                const Hamiltonian& h, Real t, Real delta,
                                const StepOptions& options,
                                const std::optional<Spectrum>& spec) {
  if (state0.qubits() != h.qubits()) {
    throw DimensionError("compile_evolution: register mismatch");
  }
  state0.require_normalized(1e-10);

  CompileResult run{{}, state0, {}, plan_layers(t, delta), delta};
  init_trace(run.trace, state0, spec);

  std::vector<ParametricCircuit> ansatz;
  ansatz.reserve(h.size());
  for (const auto& term : h.terms()) ansatz.push_back(build_ansatz(term));

  StateVector& psi = run.final_state;
  Real log_norm = 0.0;
  record_sample(run.trace, psi, h, spec, 0.0, log_norm);
  for (int layer = 1; layer <= run.plan.layers; ++layer) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      const PauliTerm& term = h.terms()[i];
      CompiledStep step;
      step.layer = layer;
      step.term_index = static_cast<int>(i);
      step.circuit = ansatz[i];
      step.angles = RVector::Zero(static_cast<Index>(ansatz[i].size()));
      if (ansatz[i].empty()) {
        // Identity term: a global scalar, no gates.
        log_norm += -delta * term.coefficient;
        run.compiled.steps.push_back(std::move(step));
        continue;
      }
      ContinuationResult solved;
      try {
        solved = continuation_solve(psi, term, ansatz[i], delta, options);
      } catch (const homotopy::PathFailure& e) {
        throw CompileFailure("compilation failed at layer " +
                                 std::to_string(layer) + ", term " +
                                 std::to_string(i) + ": " + e.what(),
                             std::move(run));
      }
      StepObjective objective(psi, term, ansatz[i]);
      objective.set_delta(delta);
      log_norm += std::log(objective.target_norm());

      step.angles = solved.solution.theta;
      step.step_fidelity = solved.solution.step_fidelity;
      step.newton_iters = solved.solution.iterations;
      step.sub_steps = static_cast<int>(solved.path.sub_steps.size());
      step.active = solved.solution.active;
      step.pruned = solved.solution.pruned;

      ansatz[i].apply(step.angles, psi.amplitudes());
      psi.normalize();
      run.compiled.total_gates += ansatz[i].size();
      run.compiled.steps.push_back(std::move(step));
    }
    record_sample(run.trace, psi, h, spec, layer * delta, log_norm);
  }
  return run;
}

}  // namespace qite
