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

#include "qite/ite_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "qite/error.hpp"

namespace qite {

namespace {

struct LogNormalizer {
  Index lowest = -1;     // first populated index
  Real log_z = 0.0;      // log sum_k |alpha_k|^2 e^{-2t(lambda_k - lambda_lowest)}
};

LogNormalizer log_normalizer(const CVector& alpha0, const RVector& lambda,
                             Real t) {
  LogNormalizer out;
  Real max_log = -std::numeric_limits<Real>::infinity();
  for (Index k = 0; k < alpha0.size(); ++k) {
    if (alpha0[k] == Complex(0)) continue;
    if (out.lowest < 0) out.lowest = k;
    const Real lw = 2 * std::log(std::abs(alpha0[k])) -
                    2 * t * (lambda[k] - lambda[out.lowest]);
    max_log = std::max(max_log, lw);
  }
  if (out.lowest < 0) return out;
  Real z = 0;
  for (Index k = 0; k < alpha0.size(); ++k) {
    if (alpha0[k] == Complex(0)) continue;
    z += std::exp(2 * std::log(std::abs(alpha0[k])) -
                  2 * t * (lambda[k] - lambda[out.lowest]) - max_log);
  }
  out.log_z = max_log + std::log(z);
  return out;
}

void check_coeff_inputs(const CVector& alpha0, const RVector& eigenvalues,
                        Real t) {
  if (!(t >= 0)) throw DomainError("imaginary time must be non-negative");
  if (alpha0.size() != eigenvalues.size()) {
    throw DimensionError("coefficient and eigenvalue vectors differ in size");
  }
  if (alpha0.size() == 0 || alpha0.cwiseAbs().maxCoeff() == 0) {
    throw InputError("all-zero initial coefficients");
  }
  for (Index k = 1; k < eigenvalues.size(); ++k) {
    if (eigenvalues[k] < eigenvalues[k - 1]) {
      throw InputError("eigenvalues must be sorted ascending");
    }
  }
}

/// First level (cluster) whose weight reaches the orthogonality threshold.
std::pair<Index, Index> target_level(const CVector& alpha0,
                                     const Spectrum& spec) {
  Index begin = 0;
  while (begin < spec.dim()) {
    const Index end = spec.level_end(begin);
    if (level_weight(alpha0, begin, end) >= kOrthogonalOverlap) {
      return {begin, end};
    }
    begin = end;
  }
  return {0, spec.ground_multiplicity};
}

}  // namespace

void EvolutionTrace::push(Real t, Real e, Real f, Real g, Real bound,
                          Real log_norm) {
  times.push_back(t);
  energy.push_back(e);
  fidelity.push_back(f);
  grad_norm_sq.push_back(g);
  fidelity_bound.push_back(bound);
  norm_log.push_back(log_norm);
}

bool EvolutionTrace::fidelity_bound_ok(Real slack) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (fidelity[i] < fidelity_bound[i] - slack) return false;
  }
  return true;
}

CVector exact_ite_coeffs(const CVector& alpha0, const RVector& eigenvalues,
                         Real t) {
  check_coeff_inputs(alpha0, eigenvalues, t);
  if (std::abs(alpha0.squaredNorm() - 1.0) > 1e-10) {
    throw StateError("initial coefficients are not normalized");
  }
  const LogNormalizer norm = log_normalizer(alpha0, eigenvalues, t);
  const Real base = eigenvalues[norm.lowest];
  CVector out = CVector::Zero(alpha0.size());
  for (Index j = 0; j < alpha0.size(); ++j) {
    const Complex a = alpha0[j];
    if (a == Complex(0)) continue;
    const Real mag = std::abs(a);
    out[j] = (a / mag) *
             std::exp(std::log(mag) - t * (eigenvalues[j] - base) -
                      0.5 * norm.log_z);
  }
  return out;
}

Real exact_log_norm(const CVector& alpha0, const RVector& eigenvalues,
                    Real t) {
  check_coeff_inputs(alpha0, eigenvalues, t);
  const LogNormalizer norm = log_normalizer(alpha0, eigenvalues, t);
  return -t * eigenvalues[norm.lowest] + 0.5 * norm.log_z;
}

ExactEvolution exact_evolve(const StateVector& state0, const Hamiltonian& h,
                            Real t, int samples) {
  if (state0.qubits() != h.qubits()) {
    throw DimensionError("exact_evolve: register mismatch");
  }
  return exact_evolve(state0, eigendecompose(h), t, samples);
}

ExactEvolution exact_evolve(const StateVector& state0, const Spectrum& spec,
                            Real t, int samples) {
  if (state0.dim() != spec.dim()) {
    throw DimensionError("exact_evolve: register mismatch");
  }
  state0.require_normalized(5e-11);
  return exact_evolve_coeffs(eigen_coeffs(state0, spec), spec, t, samples);
}

ExactEvolution exact_evolve_coeffs(const CVector& alpha0, const Spectrum& spec,
                                   Real t, int samples) {
  if (!(t >= 0)) throw DomainError("imaginary time must be non-negative");
  if (samples < 1) throw DomainError("need at least one sample");
  if (alpha0.size() != spec.dim()) {
    throw DimensionError("exact_evolve: coefficient vector size mismatch");
  }
  if (t == 0) samples = 1;

  EvolutionTrace trace;
  const Real ground_weight =
      level_weight(alpha0, 0, spec.ground_multiplicity);
  trace.orthogonal_start = ground_weight < kOrthogonalOverlap;
  std::tie(trace.target_level_begin, trace.target_level_end) =
      trace.orthogonal_start ? target_level(alpha0, spec)
                             : std::pair<Index, Index>{0, spec.ground_multiplicity};
  trace.f0 = std::min<Real>(
      1.0, level_weight(alpha0, trace.target_level_begin,
                        trace.target_level_end));
  if (trace.target_level_end < spec.dim()) {
    trace.gap = spec.eigenvalues[trace.target_level_end] -
                spec.eigenvalues[trace.target_level_begin];
  }

  const RVector& lambda = spec.eigenvalues;
  CVector coeffs;
  for (int i = 0; i < samples; ++i) {
    const Real ti =
        samples == 1 ? t : t * static_cast<Real>(i) / (samples - 1);
    coeffs = exact_ite_coeffs(alpha0, lambda, ti);
    const RVector weights = coeffs.cwiseAbs2();
    const Real energy = weights.dot(lambda);
    const Real variance =
        weights.dot((lambda.array() - energy).square().matrix());
    const Real fid = level_weight(coeffs, trace.target_level_begin,
                                  trace.target_level_end);
    Real bound = 1.0;
    if (trace.gap && trace.f0 > 0) {
      bound = fidelity_lower_bound(trace.f0, *trace.gap, ti);
    } else if (trace.f0 == 0) {
      bound = 0.0;
    }
    trace.push(ti, energy, fid, variance, bound,
               exact_log_norm(alpha0, lambda, ti));
  }

  StateVector final_state(spec.qubits, spec.eigenvectors * coeffs);
  return {std::move(trace), std::move(final_state), std::move(coeffs)};
}

StateVector limit_state(const StateVector& state0, const Spectrum& spec) {
  const CVector alpha0 = eigen_coeffs(state0, spec);
  const auto [begin, end] = target_level(alpha0, spec);
  CVector projected = CVector::Zero(alpha0.size());
  projected.segment(begin, end - begin) = alpha0.segment(begin, end - begin);
  StateVector out(spec.qubits, spec.eigenvectors * projected);
  out.normalize();
  return out;
}

Real gradient_norm_sq(const StateVector& state, const Hamiltonian& h) {
  const CVector h_psi = apply_hamiltonian(h, state);
  const Real energy = state.amplitudes().dot(h_psi).real();
  return (h_psi - energy * state.amplitudes()).squaredNorm();
}

Real fidelity_lower_bound(Real f0, Real gap, Real t) {
  if (!(f0 > 0 && f0 <= 1)) throw DomainError("f0 must lie in (0, 1]");
  if (!(gap > 0)) throw DomainError("gap must be positive");
  if (!(t >= 0)) throw DomainError("t must be non-negative");
  return 1.0 / (1.0 + std::exp(-2 * t * gap) / f0);
}

Real fidelity_threshold_time(Real f_target, Real f0, Real gap) {
  if (!(f_target > 0 && f_target < 1)) {
    throw DomainError("target fidelity must lie in (0, 1)");
  }
  if (!(f0 > 0 && f0 <= 1)) throw DomainError("f0 must lie in (0, 1]");
  if (!(gap > 0)) throw DomainError("gap must be positive");
  const Real t =
      (std::log(f_target) - std::log1p(-f_target) - std::log(f0)) / (2 * gap);
  return std::max<Real>(0.0, t);
}

ErrorBound error_bound(Real f0, Real gap, Real t) {
  if (!(f0 > 0 && f0 <= 1)) throw DomainError("f0 must lie in (0, 1]");
  if (!(gap > 0)) throw DomainError("gap must be positive");
  if (!(t >= 0)) throw DomainError("t must be non-negative");
  ErrorBound b;
  b.correction = std::exp(-2 * t * gap);
  b.leading = b.correction / (f0 * f0 * f0);
  b.asymptotic_regime = b.correction <= 0.1;
  return b;
}

}  // namespace qite
