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

#include "qite/combopt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "qite/error.hpp"
#include "qite/ite_trotter.hpp"
#include "qite/state.hpp"

namespace qite {

QuboInstance::QuboInstance(int variables)
    : n(variables),
      linear(RVector::Zero(variables)),
      quadratic(RMatrix::Zero(variables, variables)) {
  if (variables < 0) throw DomainError("negative variable count");
}

void QuboInstance::add_linear(int i, Real value) {
  if (i < 0 || i >= n) throw DimensionError("linear index out of range");
  linear[i] += value;
}

void QuboInstance::add_quadratic(int i, int j, Real value) {
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw DimensionError("quadratic index out of range");
  }
  if (i > j) throw InputError("quadratic entries need i <= j");
  if (i == j) {
    linear[i] += value;  // x_i^2 = x_i
  } else {
    quadratic(i, j) += value;
  }
}

Real QuboInstance::evaluate(std::uint64_t x) const {
  auto bit = [&](int i) { return (x >> (n - 1 - i)) & 1; };
  Real value = 0;
  for (int i = 0; i < n; ++i) {
    if (!bit(i)) continue;
    value += linear[i];
    for (int j = i + 1; j < n; ++j) {
      if (bit(j)) value += quadratic(i, j);
    }
  }
  return value;
}

namespace {

struct QuboEntry {
  int i;
  int j;  // -1 for linear
  Real value;
};

template <typename T>
T parse_number(const std::string& token, std::size_t line_no,
               const char* what) {
  T value{};
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line_no) + ": invalid " + what +
                         " '" + token + "'",
                     line_no, 0);
  }
  return value;
}

}  // namespace

QuboInstance parse_qubo(std::istream& in) {
  std::vector<QuboEntry> entries;
  int n = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream line(raw);
    std::string kind;
    if (!(line >> kind) || kind.front() == '#') continue;
    std::vector<std::string> tokens;
    for (std::string tok; line >> tok;) tokens.push_back(tok);

    QuboEntry e{};
    if (kind == "lin") {
      if (tokens.size() != 2) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": expected 'lin <i> <value>'",
                         line_no, 0);
      }
      e = {parse_number<int>(tokens[0], line_no, "index"), -1,
           parse_number<Real>(tokens[1], line_no, "value")};
    } else if (kind == "quad") {
      if (tokens.size() != 3) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": expected 'quad <i> <j> <value>'",
                         line_no, 0);
      }
      e = {parse_number<int>(tokens[0], line_no, "index"),
           parse_number<int>(tokens[1], line_no, "index"),
           parse_number<Real>(tokens[2], line_no, "value")};
      if (e.i > e.j) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": quad needs i < j (0-based)",
                         line_no, 0);
      }
    } else {
      throw ParseError("line " + std::to_string(line_no) +
                           ": unknown record '" + kind + "'",
                       line_no, 0);
    }
    if (e.i < 0 || (e.j != -1 && e.j < 0)) {
      throw ParseError("line " + std::to_string(line_no) + ": negative index",
                       line_no, 0);
    }
    if (!std::isfinite(e.value)) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": value is not finite",
                       line_no, 0);
    }
    n = std::max({n, e.i + 1, e.j + 1});
    entries.push_back(e);
  }
  if (n == 0) throw ParseError("QUBO file defines no variables", line_no, 0);

  QuboInstance q(n);
  for (const auto& e : entries) {
    if (e.j < 0) {
      q.add_linear(e.i, e.value);
    } else {
      q.add_quadratic(e.i, e.j, e.value);
    }
  }
  return q;
}

QuboInstance parse_qubo(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_qubo(in);
}

QuboInstance load_qubo(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open QUBO file " + path.string());
  return parse_qubo(in);
}

Hamiltonian qubo_to_hamiltonian(const QuboInstance& q) {
  if (q.n < 1) throw DomainError("QUBO needs at least one variable");
  const int n = q.n;
  Real offset = 0;
  RVector z = RVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    offset += q.linear[i] / 2;
    z[i] -= q.linear[i] / 2;
    for (int j = i + 1; j < n; ++j) {
      const Real w = q.quadratic(i, j);
      offset += w / 4;
      z[i] -= w / 4;
      z[j] -= w / 4;
    }
  }

  auto mask = [n](int i) { return std::uint64_t{1} << (n - 1 - i); };
  std::vector<PauliTerm> terms;
  terms.push_back({offset, PauliString::identity(n)});
  for (int i = 0; i < n; ++i) {
    if (z[i] != 0) terms.push_back({z[i], PauliString(n, 0, mask(i))});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Real w = q.quadratic(i, j);
      if (w != 0) {
        terms.push_back({w / 4, PauliString(n, 0, mask(i) | mask(j))});
      }
    }
  }
  return Hamiltonian(n, std::move(terms), std::min(n, 2));
}

Minima brute_force_minima(const QuboInstance& q) {
  if (q.n < 1) throw DomainError("QUBO needs at least one variable");
  if (q.n > kBruteForceCap) {
    throw ResourceError("brute force enumeration capped at " +
                        std::to_string(kBruteForceCap) + " variables");
  }
  const std::uint64_t count = std::uint64_t{1} << q.n;
  std::vector<Real> values(count);
  Real best = INFINITY;
  for (std::uint64_t x = 0; x < count; ++x) {
    values[x] = q.evaluate(x);
    best = std::min(best, values[x]);
  }
  const Real tol = 1e-12 * std::max<Real>(1.0, std::abs(best));
  Minima out;
  out.value = best;
  Real next = INFINITY;
  for (std::uint64_t x = 0; x < count; ++x) {
    if (values[x] - best <= tol) {
      out.bitstrings.push_back(index_to_bits(x, q.n));
    } else {
      next = std::min(next, values[x]);
    }
  }
  if (std::isfinite(next)) out.gap = next - best;
  return out;
}

Real success_probability(const StateVector& state,
                         const std::vector<std::string>& minima) {
  Real p = 0;
  for (const auto& bits : minima) {
    if (static_cast<int>(bits.size()) != state.qubits()) {
      throw DimensionError("minimum '" + bits + "' has the wrong length");
    }
    p += std::norm(state[static_cast<Index>(bits_to_index(bits))]);
  }
  return p;
}

Real success_bound(int qubits, Real mu, Real gap, Real t) {
  if (qubits < 1) throw DomainError("success_bound: qubits must be >= 1");
  if (!(mu >= 1)) throw DomainError("success_bound: mu must be >= 1");
  if (!(gap > 0)) throw DomainError("success_bound: gap must be positive");
  if (!(t >= 0)) throw DomainError("success_bound: t must be non-negative");
  return 1.0 / (1.0 + std::exp(qubits * std::numbers::ln2 - std::log(mu) -
                               2 * t * gap));
}

Real threshold_time(int qubits, Real mu, Real gap, Real epsilon) {
  if (qubits < 1) throw DomainError("threshold_time: qubits must be >= 1");
  if (!(mu >= 1)) throw DomainError("threshold_time: mu must be >= 1");
  if (!(gap > 0)) throw DomainError("threshold_time: gap must be positive");
  if (!(epsilon > 0 && epsilon < 1)) {
    throw DomainError("threshold_time: epsilon must lie in (0, 1)");
  }
  const Real t = (qubits * std::numbers::ln2 - std::log(mu) +
                  std::log(epsilon) - std::log1p(-epsilon)) /
                 (2 * gap);
  return std::max<Real>(0.0, t);
}

Real shot_success(Real epsilon, std::uint64_t shots) {
  if (!(epsilon >= 0 && epsilon <= 1)) {
    throw DomainError("shot_success: epsilon must lie in [0, 1]");
  }
  if (shots < 1) throw DomainError("shot_success: shots must be >= 1");
  if (epsilon == 1) return 1.0;
  return -std::expm1(static_cast<Real>(shots) * std::log1p(-epsilon));
}

Backend parse_backend(std::string_view name) {
  if (name == "exact") return Backend::kExact;
  if (name == "trotter") return Backend::kTrotter;
  if (name == "varqite") return Backend::kVarqite;
  throw InputError("unknown backend '" + std::string(name) +
                   "' (expected exact, trotter or varqite)");
}

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::kExact:
      return "exact";
    case Backend::kTrotter:
      return "trotter";
    case Backend::kVarqite:
      return "varqite";
  }
  return "?";
}

SuccessReport run_combinatorial(const QuboInstance& q,
                                const CombinatorialOptions& options) {
  if (options.repeats < 1) throw DomainError("repeats must be >= 1");
  const Minima minima = brute_force_minima(q);
  const Hamiltonian h = qubo_to_hamiltonian(q);

  SuccessReport report;
  report.epsilon = options.epsilon;
  report.shots = options.shots;
  report.seed = options.seed;
  report.backend = options.backend;
  report.minima = minima.bitstrings;
  report.mu = static_cast<int>(minima.bitstrings.size());
  report.gap = minima.gap;
  report.minimum_value = minima.value;

  const Real t_target =
      minima.gap ? threshold_time(q.n, report.mu, *minima.gap, options.epsilon)
                 : 0.0;
  const StateVector psi0 = equal_superposition(q.n);
  std::optional<StateVector> final_state;
  Real t_evolved = t_target;
  switch (options.backend) {
    case Backend::kExact: {
      ExactEvolution run = exact_evolve(psi0, h, t_target, options.samples);
      report.trace = std::move(run.trace);
      final_state = std::move(run.final_state);
      break;
    }
    case Backend::kTrotter: {
      TrotterEvolution run = trotter_evolve(psi0, h, t_target, options.delta);
      t_evolved = run.plan.layers * options.delta;
      report.trace = std::move(run.trace);
      final_state = std::move(run.final_state);
      break;
    }
    case Backend::kVarqite: {
      CompileResult run =
          compile_evolution(psi0, h, t_target, options.delta, options.step);
      t_evolved = run.plan.layers * options.delta;
      report.trace = std::move(run.trace);
      final_state = std::move(run.final_state);
      break;
    }
  }

  report.t = t_evolved;
  report.p_measured = success_probability(*final_state, minima.bitstrings);
  report.p_bound = minima.gap ? success_bound(q.n, report.mu, *minima.gap,
                                              t_evolved)
                              : 1.0;
  report.bound_ok = report.p_measured >= report.p_bound - 1e-9;
  report.success_prob_shots =
      shot_success(std::clamp<Real>(report.p_measured, 0.0, 1.0), options.shots);

  const std::set<std::string> optimal(minima.bitstrings.begin(),
                                      minima.bitstrings.end());
  int hits = 0;
  for (int r = 0; r < options.repeats; ++r) {
    const SampleCounts counts = sample_z(
        *final_state, options.shots,
        split_seed(options.seed, static_cast<std::uint64_t>(r)));
    const bool hit = std::any_of(
        counts.counts.begin(), counts.counts.end(),
        [&](const auto& kv) { return optimal.count(kv.first) > 0; });
    hits += hit ? 1 : 0;
    if (r == 0) report.first_sample = counts;
  }
  report.repeats = options.repeats;
  report.empirical_success = static_cast<Real>(hits) / options.repeats;
  const Real p = report.success_prob_shots;
  const Real sigma = std::sqrt(p * (1 - p) / options.repeats);
  report.empirical_within_5_sigma =
      std::abs(report.empirical_success - p) <= 5 * sigma + 1e-12;
  return report;
}

}  // namespace qite
