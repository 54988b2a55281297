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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qite/combopt.hpp"
#include "qite/ite_exact.hpp"
#include "qite/ite_trotter.hpp"
#include "qite/spectral.hpp"
#include "qite/state.hpp"
#include "qite/varqite.hpp"

namespace {

using namespace qite;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Instance {
  Hamiltonian h;
  CMatrix dense;
  Real gap;
  StateVector psi0;
};

// Q cycles through 2..8; instances with gap < 0.05 are redrawn.
const std::vector<Instance>& suite() {
  static const std::vector<Instance> cases = [] {
    std::vector<Instance> out;
    std::uint64_t seed = 1000;
    for (int k = 0; k < 25; ++k) {
      const int q = 2 + k % 7;
      for (;;) {
        ++seed;
        Hamiltonian h = oracle::random_hamiltonian(q, 2, q + 2 + k % 3, seed);
        CMatrix m = oracle::dense(h);
        const Real gap = oracle::dense_gap(m);
        if (gap < 0.05) continue;
        out.push_back({std::move(h), std::move(m), gap, random_state(q, seed)});
        break;
      }
    }
    return out;
  }();
  return cases;
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Real worst = 0;
  for (const auto& c : suite()) {
    const Real t = 3.0 / c.gap;
    const ExactEvolution run = exact_evolve(c.psi0, c.h, t, 2);
    const CVector want = oracle::ite(c.dense, c.psi0.amplitudes(), t);
    worst = std::max(worst, oracle::phase_distance(run.final_state.amplitudes(), want));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-9 && secs < 60,
          "25 instances, max state distance " + fmt("%.2e", worst) +
              " (<= 1e-9), " + fmt("%.1f", secs) + " s (< 60 s)"};
}

Outcome criterion2() {
  int violations = 0, checked = 0;
  for (const auto& c : suite()) {
    const ExactEvolution run = exact_evolve(c.psi0, c.h, 3.0 / c.gap, 100);
    const Real f0 = run.trace.fidelity.front();
    for (std::size_t i = 0; i < run.trace.size(); ++i) {
      const Real bound =
          1.0 / (1.0 + std::exp(-2 * run.trace.times[i] * c.gap) / f0);
      ++checked;
      if (run.trace.fidelity[i] < bound - 1e-9) ++violations;
    }
  }
  return {violations == 0 && checked == 2500,
          std::to_string(checked) + " samples, " + std::to_string(violations) +
              " bound violations"};
}

Outcome criterion3() {
  int mono_bad = 0;
  Real worst_rel = 0;
  for (const auto& c : suite()) {
    const Real horizon = 3.0 / c.gap;
    const Spectrum spec = eigendecompose(c.h);
    const ExactEvolution run = exact_evolve(c.psi0, spec, horizon, 100);
    for (std::size_t i = 1; i < run.trace.size(); ++i) {
      if (run.trace.energy[i] > run.trace.energy[i - 1] + 1e-9) ++mono_bad;
      if (run.trace.fidelity[i] < run.trace.fidelity[i - 1] - 1e-9) ++mono_bad;
    }
    const Real h = 1e-4;
    for (Real frac : {0.1, 0.5, 0.9}) {
      const Real t = frac * horizon;
      const Real ep = exact_evolve(c.psi0, spec, t + h, 1).trace.energy.back();
      const Real em = exact_evolve(c.psi0, spec, t - h, 1).trace.energy.back();
      const Real g = exact_evolve(c.psi0, spec, t, 1).trace.grad_norm_sq.back();
      const Real rel = std::abs((ep - em) / (2 * h) + 2 * g) / (2 * g);
      worst_rel = std::max(worst_rel, rel);
    }
  }
  return {mono_bad == 0 && worst_rel <= 1e-4,
          std::to_string(mono_bad) + " monotonicity breaks; max rel |E' + 2g| " +
              fmt("%.2e", worst_rel) + " (<= 1e-4)"};
}

Outcome criterion4() {
  const Real t = fidelity_threshold_time(0.99, 0.5, 2.0);
  const ExactEvolution run =
      exact_evolve(equal_superposition(1), parse_hamiltonian("1.0 Z"), t, 2);
  const Real f = run.trace.fidelity.back();
  return {std::abs(t - 1.3221) <= 1e-3 && f >= 0.99,
          "t = " + fmt("%.5f", t) + " (1.3221 +- 1e-3), f(t) = " + fmt("%.6f", f) +
              " (>= 0.99)"};
}

Real slope(const std::vector<Real>& x, const std::vector<Real>& y) {
  Real mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  Real num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return num / den;
}

bool commutes(const PauliString& a, const PauliString& b) {
  const auto anti = (a.x_mask() & b.z_mask()) ^ (a.z_mask() & b.x_mask());
  return __builtin_popcountll(anti) % 2 == 0;
}

Outcome criterion5() {
  const std::vector<Real> deltas{0.04, 0.02, 0.01, 0.005};
  Real lo = INFINITY, hi = -INFINITY;
  std::uint64_t seed = 5000;
  for (int k = 0; k < 10; ++k) {
    const int q = 2 + k % 5;
    Hamiltonian h = oracle::random_hamiltonian(q, 2, q + 2, ++seed);
    for (;;) {
      bool noncommuting = false;
      for (const auto& a : h.terms()) {
        for (const auto& b : h.terms()) noncommuting |= !commutes(a.string, b.string);
      }
      if (noncommuting) break;
      h = oracle::random_hamiltonian(q, 2, q + 2, ++seed);
    }
    const StateVector psi = random_state(q, seed);
    const CVector exact = oracle::ite(oracle::dense(h), psi.amplitudes(), 1.0);
    std::vector<Real> errors;
    for (Real d : deltas) {
      const TrotterEvolution tr = trotter_evolve(psi, h, 1.0, d);
      errors.push_back(oracle::phase_distance(tr.final_state.amplitudes(), exact));
    }
    const Real s = slope(deltas, errors);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }

  Real diag_worst = 0;
  for (int k = 0; k < 5; ++k) {
    const int q = 2 + k;
    const Hamiltonian h = oracle::random_hamiltonian(q, 2, 2 * q, 6000 + k, true);
    const StateVector psi = random_state(q, 6100 + k);
    for (Real d : {0.3, 0.04, 0.02, 0.01, 0.005}) {
      const TrotterEvolution tr = trotter_evolve(psi, h, 1.2, d);
      const CVector exact =
          oracle::ite(oracle::dense(h), psi.amplitudes(), tr.plan.layers * d);
      diag_worst = std::max(
          diag_worst, oracle::phase_distance(tr.final_state.amplitudes(), exact));
    }
  }
  return {lo >= 0.75 && hi <= 1.25 && diag_worst <= 1e-9,
          "slopes in [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) +
              "] (within [0.75, 1.25]); all-Z max error " + fmt("%.2e", diag_worst) +
              " (<= 1e-9)"};
}

Real step_infidelity(const StateVector& psi, const PauliTerm& t, Real delta) {
  const ParametricCircuit c = build_ansatz(t);
  const ContinuationResult r = continuation_solve(psi, t, c, delta);
  const CVector target = oracle::ite(
      t.coefficient * oracle::dense(t.string.to_string()), psi.amplitudes(), delta);
  const CVector out = c.apply(r.solution.theta, psi).amplitudes();
  return 1 - std::norm(target.dot(out));
}

Outcome criterion6() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<Real> coeff(0.3, 1.0);
  Real lo = INFINITY, hi = -INFINITY;
  for (int k = 0; k < 10; ++k) {
    const int q = 3 + k % 3;
    std::string s;
    do {
      s = oracle::random_pauli(q, 2, rng);
    } while (std::count(s.begin(), s.end(), 'I') != q - 2);
    const PauliTerm t{(k % 2 ? -1 : 1) * coeff(rng), parse_pauli(s)};
    const StateVector psi = random_state(q, 900 + k);
    const Real ratio = step_infidelity(psi, t, 0.02) / step_infidelity(psi, t, 0.01);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  Real angle_err = 0;
  const PauliTerm z{1.0, parse_pauli("Z")};
  const ParametricCircuit c = build_ansatz(z);
  for (Real d : {0.05, 0.3}) {
    const ContinuationResult r = continuation_solve(equal_superposition(1), z, c, d);
    const Real want = 2 * (std::atan(std::exp(2 * d)) - M_PI / 4);
    angle_err = std::max(angle_err, std::abs(r.solution.theta[1] - want));
    angle_err = std::max(angle_err, std::abs(r.solution.theta[0]));
    angle_err = std::max(angle_err, std::abs(r.solution.theta[2]));
  }
  return {lo >= 2.8 && hi <= 5.2 && angle_err <= 1e-8,
          "infidelity ratios in [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) +
              "] (within [2.8, 5.2]); closed-form angle error " +
              fmt("%.2e", angle_err) + " (<= 1e-8)"};
}

Outcome criterion7() {
  const Hamiltonian h = parse_hamiltonian("0.5 X\n0.5 Z\n");
  const StateVector psi = random_state(1, 2024, /*real_only=*/true);
  const CompileResult r = compile_evolution(psi, h, 1.0, 0.01);
  const CVector exact = oracle::ite(oracle::dense(h), psi.amplitudes(), 1.0);
  const Real f = std::norm(exact.dot(r.final_state.amplitudes()));
  const std::size_t bound = 4 * 2 * 100;
  return {f >= 0.999 && r.compiled.total_gates <= bound,
          "fidelity vs exact " + fmt("%.6f", f) + " (>= 0.999), " +
              std::to_string(r.compiled.total_gates) + " gates (<= 800)"};
}

QuboInstance random_qubo(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> v(-4, 4);
  QuboInstance q(n);
  for (int i = 0; i < n; ++i) {
    q.add_linear(i, v(rng));
    for (int j = i + 1; j < n; ++j) q.add_quadratic(i, j, v(rng));
  }
  return q;
}

Outcome criterion8() {
  const QuboInstance x = parse_qubo("lin 0 1\nlin 1 1\nquad 0 1 -2\n");
  const Hamiltonian hx = qubo_to_hamiltonian(x);
  const Minima mx = brute_force_minima(x);
  const Real p1 = success_probability(
      exact_evolve(equal_superposition(2), hx, 1.0, 1).final_state, mx.bitstrings);
  const Real bound1 = success_bound(2, 2, 1.0, 1.0);
  const bool xor_ok = std::abs(p1 - 1 / (1 + std::exp(-2.0))) <= 1e-9 &&
                      p1 >= bound1 &&
                      std::abs(bound1 - 1 / (1 + 2 * std::exp(-2.0))) <= 1e-12;
  const Real tt = threshold_time(4, 2, 1, 0.5);

  int violations = 0, checked = 0;
  for (int k = 0; k < 10; ++k) {
    const int n = 3 + k % 6;
    const QuboInstance q = random_qubo(n, 40 + k);
    const Minima m = brute_force_minima(q);
    const Spectrum spec = eigendecompose(qubo_to_hamiltonian(q));
    const int mu = static_cast<int>(m.bitstrings.size());
    const Real horizon = 2 * threshold_time(n, mu, *m.gap, 0.99) + 0.5;
    for (int i = 0; i < 50; ++i) {
      const Real t = horizon * i / 49.0;
      const StateVector s = exact_evolve(equal_superposition(n), spec, t, 1).final_state;
      ++checked;
      if (success_probability(s, m.bitstrings) <
          success_bound(n, mu, *m.gap, t) - 1e-12) {
        ++violations;
      }
    }
  }
  return {xor_ok && std::abs(tt - 1.0397) <= 1e-3 && violations == 0,
          "XOR p(1) = " + fmt("%.10f", p1) + " >= bound " + fmt("%.5f", bound1) +
              "; threshold_time(4,2,1,0.5) = " + fmt("%.5f", tt) + "; " +
              std::to_string(violations) + " of " + std::to_string(checked) +
              " random-QUBO samples below bound"};
}

Outcome criterion9() {
  const Real s = shot_success(0.1, 30);
  bool all_within = true;
  std::string runs;
  struct Case {
    QuboInstance q;
    std::uint64_t shots;
    Real eps;
  };
  const std::vector<Case> cases{
      {parse_qubo("lin 0 1\nlin 1 1\nquad 0 1 -2\n"), 1, 0.5},
      {parse_qubo("lin 0 1\nlin 1 1\nquad 0 1 -2\n"), 3, 0.5},
      {random_qubo(5, 91), 2, 0.3},
      {random_qubo(6, 92), 4, 0.2}};
  std::uint64_t seed = 17;
  for (const auto& c : cases) {
    CombinatorialOptions o;
    o.epsilon = c.eps;
    o.shots = c.shots;
    o.seed = seed++;
    o.repeats = 200;
    const SuccessReport r = run_combinatorial(c.q, o);
    all_within &= r.empirical_within_5_sigma;
    runs += " " + fmt("%.3f", r.empirical_success) + "/" +
            fmt("%.3f", r.success_prob_shots);
  }
  return {std::abs(s - 0.9576) <= 1e-4 && all_within,
          "shot_success(0.1,30) = " + fmt("%.6f", s) +
              "; empirical/predicted over 200 runs:" + runs +
              (all_within ? " (all within 5 sigma)" : " (outside 5 sigma)")};
}

Outcome criterion10() {
  int flagged = 0, leaks = 0, cases = 0;
  std::mt19937_64 rng(10);
  for (int k = 0; k < 8; ++k) {
    const int q = 2 + k % 4;
    const Hamiltonian h = oracle::random_hamiltonian(q, 2, q + 2, 1300 + k);
    const Spectrum spec = eigendecompose(h);
    const Index dim = spec.dim();
    // Zero the whole ground level and a random subset of the rest.
    CVector a0 = oracle::random_vector(q, 1400 + k);
    a0.head(spec.ground_multiplicity).setZero();
    std::vector<bool> zero(static_cast<std::size_t>(dim), false);
    for (Index j = 0; j < dim; ++j) {
      if (j < spec.ground_multiplicity || (j + 1 < dim && rng() % 3 == 0)) {
        a0[j] = 0;
        zero[static_cast<std::size_t>(j)] = true;
      }
    }
    a0 /= a0.norm();
    const Real horizon = 10.0;
    const ExactEvolution run = exact_evolve_coeffs(a0, spec, horizon, 100);
    ++cases;
    flagged += run.trace.orthogonal_start ? 1 : 0;
    for (Real t : run.trace.times) {
      const CVector a = exact_ite_coeffs(a0, spec.eigenvalues, t);
      for (Index j = 0; j < dim; ++j) {
        if (zero[static_cast<std::size_t>(j)] && a[j] != Complex(0, 0)) ++leaks;
      }
    }
    for (Index j = 0; j < dim; ++j) {
      if (zero[static_cast<std::size_t>(j)] && run.final_coeffs[j] != Complex(0, 0)) ++leaks;
    }
  }
  return {leaks == 0 && flagged == cases,
          std::to_string(cases) + " orthogonal starts, " + std::to_string(flagged) +
              " flagged, " + std::to_string(leaks) + " nonzero coefficients on zero support"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", criterion1},
      {"fidelity lower bound", criterion2},
      {"monotone energy and fidelity", criterion3},
      {"fidelity threshold time", criterion4},
      {"Trotter first-order scaling", criterion5},
      {"compiled step quality", criterion6},
      {"compiled evolution", criterion7},
      {"combinatorial success bound", criterion8},
      {"shot success", criterion9},
      {"support preservation", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu %s: %s  %s\n", i + 1, criteria[i].first,
                o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
